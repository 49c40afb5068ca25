#include "spr/kgrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spr/errors.hpp"
#include "spr/pulse.hpp"
#include "spr/quadrature.hpp"

namespace spr {

namespace {

// A request to cover [lo, hi] with panels no wider than cap. Overlapping
// requests are legal; the splitter keeps the tightest cap wherever they
// stack.
struct Request {
  double lo;
  double hi;
  double cap;
};

constexpr double kPhaseCapFactor = 0.8;  // of the GL degree 2n+1
constexpr std::size_t kNodeBudget = 300000;

void push_clipped(std::vector<Request>& req, double lo, double hi, double cap,
                  double bound_lo) {
  lo = std::max(lo, bound_lo);
  if (!(hi > lo)) return;
  req.push_back({lo, hi, std::max(cap, 1e-300)});
}

// Concentric panel rings around a spectral feature at c with base half-width
// w0: one panel across the line, width-doubling rings outward while they
// still resolve e^{i delta s_max} (width < w_cap), then w_cap panels out to
// resolved_extent, then doubling rings again (deliberately unresolved, they
// only carry smooth residual mass) out to outer_extent.
void add_feature(std::vector<Request>& req, double c, double w0, double w_cap,
                 double resolved_extent, double outer_extent, bool smooth_tail,
                 double bound_lo) {
  push_clipped(req, c - w0, c + w0, 2.0 * w0, bound_lo);
  for (int side = -1; side <= 1; side += 2) {
    double x = w0;
    while (x < w_cap && x < outer_extent) {
      const double nx = std::min(2.0 * x, outer_extent);
      if (side > 0) {
        push_clipped(req, c + x, c + nx, nx - x, bound_lo);
      } else {
        push_clipped(req, c - nx, c - x, nx - x, bound_lo);
      }
      x = nx;
    }
    if (x < resolved_extent) {
      if (side > 0) {
        push_clipped(req, c + x, c + resolved_extent, w_cap, bound_lo);
      } else {
        push_clipped(req, c - resolved_extent, c - x, w_cap, bound_lo);
      }
      x = resolved_extent;
    }
    while (smooth_tail && x < outer_extent) {
      const double nx = std::min(2.0 * x, outer_extent);
      if (side > 0) {
        push_clipped(req, c + x, c + nx, nx - x, bound_lo);
      } else {
        push_clipped(req, c - nx, c - x, nx - x, bound_lo);
      }
      x = nx;
    }
  }
}

bool nearly_equal(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-12 * scale;
}

KGrid build_uniform(const SystemParams& p, const PulseParams& pulse,
                    double t_m, const GridOptions& opt) {
  const ComplexResonances r = resonances(p);
  double half = opt.uniform_halfspan;
  if (half <= 0.0) {
    half = std::max({60.0 / pulse.t_ph, 30.0 * p.kappa,
                     4.0 * std::abs(r.E_plus - r.E_minus)});
  }
  const int n = std::max(opt.uniform_nodes, 3);
  KGrid g;
  g.delta.resize(n);
  g.weight.resize(n);
  const double step = 2.0 * half / (n - 1);
  for (int i = 0; i < n; ++i) {
    g.delta[i] = -half + step * i;
    g.weight[i] = (i == 0 || i == n - 1) ? 0.5 * step : step;
  }
  g.covered = {{-half, half}};
  g.halfspan = half;
  g.s_max = std::max(t_m, pulse.t_ph);
  return g;
}

}  // namespace

GridOptions GridOptions::refined(int level) const {
  GridOptions o = *this;
  if (level <= 0) return o;
  o.density = density * std::pow(2.0, level);
  o.span_scale = span_scale * (1.0 + 0.25 * level);
  o.tail_scale = tail_scale * (1.0 + 0.5 * level);
  if (uniform) {
    long nodes = uniform_nodes;
    for (int i = 0; i < level; ++i) nodes *= 2;
    o.uniform_nodes = static_cast<int>(std::min<long>(nodes, 1 << 22));
  }
  return o;
}

KGrid build_grid(const SystemParams& p, const PulseParams& pulse, double t_m,
                 const GridOptions& opt) {
  p.validate();
  pulse.validate();
  if (opt.nodes_per_panel < 2 || opt.nodes_per_panel > 512) {
    throw InvalidInput("nodes_per_panel must lie in [2, 512]");
  }
  if (opt.density <= 0.0 || opt.span_scale <= 0.0 || opt.tail_scale <= 0.0) {
    throw InvalidInput("grid scale factors must be positive");
  }
  if (opt.uniform) return build_uniform(p, pulse, t_m, opt);

  const ComplexResonances r = resonances(p);
  const int n = opt.nodes_per_panel;
  const double s1 = std::max(t_m, pulse.t_ph);
  const double t_ph = pulse.t_ph;
  const double bound_lo = -0.98 * pulse.omega_ph;  // k > 0 only

  const double fill_half = (60.0 / t_ph) * opt.span_scale;
  double w_cap = kPhaseCapFactor * (2.0 * n + 1.0) / (s1 * opt.density);
  w_cap = std::min(w_cap, fill_half / 3.0);

  // Feature centers, as offsets from the carrier. Whatever shows up on one
  // side is mirrored so the coverage invariant holds symmetrically; the
  // mirrors are also where the pair-sector resonances sit.
  const double cav1 = r.cavity_like().real() - pulse.omega_ph;
  const double qub1 = r.qubit_like().real() - pulse.omega_ph;
  const std::complex<double> e2cav =
      (std::abs(r.E2_plus - 2.0 * p.omega_r) <=
       std::abs(r.E2_minus - 2.0 * p.omega_r))
          ? r.E2_plus
          : r.E2_minus;
  const std::complex<double> e2qub =
      (std::abs(e2cav - r.E2_plus) < std::abs(e2cav - r.E2_minus)) ? r.E2_minus
                                                                   : r.E2_plus;
  const double dcav = (e2cav - r.cavity_like()).real() - pulse.omega_ph;
  const double dqub = (e2qub - r.qubit_like()).real() - pulse.omega_ph;

  const double h = 0.5 / t_ph;  // pulse half-width
  // Base panel width at the qubit line: its physical linewidth, floored well
  // below the 1/s1 truncation width so the line core itself stays resolved
  // even when the emission is much narrower than the observation window.
  const double gamma_q =
      std::max(2.0 * std::abs(r.qubit_like().imag()), 0.1 / s1);
  // Resolve the truncation sidelobes of the qubit line until their
  // leftover mass fraction drops to ~2e-3 of the emission channel.
  const double qub_resolved = opt.tail_scale * 318.31 / s1;
  const double cav_w = std::max(p.kappa, 2.0 / s1);

  std::vector<Request> req;
  req.push_back({std::max(-fill_half, bound_lo), fill_half, w_cap});
  add_feature(req, 0.0, h, w_cap, 0.0, fill_half, false, bound_lo);
  for (double c : {cav1, -cav1, dcav, -dcav, dqub, -dqub}) {
    add_feature(req, c, cav_w, w_cap, 0.0, 5.0 * cav_w, true, bound_lo);
  }
  for (double c : {qub1, -qub1}) {
    add_feature(req, c, gamma_q, w_cap, qub_resolved, 4.0 * qub_resolved, true,
                bound_lo);
  }

  // Far tails for the 1/delta^2 pulse skirt; transients are dead out here,
  // so width-doubling panels capture the smooth mass without resolving
  // e^{i delta s}.
  const double tail_end = (3000.0 / t_ph) * opt.tail_scale;
  {
    double x = fill_half;
    while (x < tail_end) {
      const double nx = std::min(2.0 * x, tail_end);
      push_clipped(req, x, nx, nx - x, bound_lo);
      push_clipped(req, -nx, -x, nx - x, bound_lo);
      x = nx;
    }
  }

  // Split the union of requests into elementary pieces on the sorted edge
  // set; each piece inherits the tightest cap of the requests covering it.
  std::vector<double> edges;
  edges.reserve(2 * req.size());
  double scale = 1.0;
  for (const Request& q : req) {
    edges.push_back(q.lo);
    edges.push_back(q.hi);
    scale = std::max({scale, std::abs(q.lo), std::abs(q.hi)});
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [scale](double a, double b) {
                            return nearly_equal(a, b, scale);
                          }),
              edges.end());

  struct Piece {
    double lo;
    double hi;
    double cap;
  };
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    const double mid = 0.5 * (lo + hi);
    double cap = std::numeric_limits<double>::infinity();
    for (const Request& q : req) {
      if (q.lo <= mid && mid <= q.hi) cap = std::min(cap, q.cap);
    }
    if (std::isinf(cap)) continue;  // gap between islands
    pieces.push_back({lo, hi, cap});
  }
  if (pieces.empty()) throw InvalidInput("grid construction produced no coverage");

  std::size_t total_nodes = 0;
  std::vector<int> panel_count(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double len = pieces[i].hi - pieces[i].lo;
    int np = static_cast<int>(std::ceil(len / pieces[i].cap - 1e-9));
    np = std::max(np, 1);
    panel_count[i] = np;
    total_nodes += static_cast<std::size_t>(np) * n;
  }
  if (total_nodes > kNodeBudget) {
    throw InvalidInput(
        "k-grid node budget exceeded; relax density/span/tail options");
  }

  KGrid g;
  g.delta.reserve(total_nodes);
  g.weight.reserve(total_nodes);
  const GLRule& rule = gauss_legendre_rule(n);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double len = pieces[i].hi - pieces[i].lo;
    const double pw = len / panel_count[i];
    for (int j = 0; j < panel_count[i]; ++j) {
      const double a = pieces[i].lo + pw * j;
      const double b = (j + 1 == panel_count[i]) ? pieces[i].hi : a + pw;
      const double mid = 0.5 * (a + b);
      const double half = 0.5 * (b - a);
      for (int m = 0; m < n; ++m) {
        g.delta.push_back(mid + half * rule.x[m]);
        g.weight.push_back(half * rule.w[m]);
      }
    }
  }

  // Merge touching pieces into the covered-interval list.
  for (const Piece& pc : pieces) {
    if (!g.covered.empty() &&
        nearly_equal(g.covered.back().second, pc.lo, scale)) {
      g.covered.back().second = pc.hi;
    } else {
      g.covered.emplace_back(pc.lo, pc.hi);
    }
  }
  for (const auto& iv : g.covered) {
    g.halfspan = std::max({g.halfspan, std::abs(iv.first), std::abs(iv.second)});
  }
  g.s_max = s1;
  return g;
}

void check_coverage(const KGrid& grid, const SystemParams& p,
                    const PulseParams& pulse) {
  if (grid.delta.empty() || grid.covered.empty()) {
    throw InvalidInput("empty k-grid");
  }
  for (double w : grid.weight) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw InvalidInput("k-grid weights must be positive and finite");
    }
  }
  const double band = 10.0 / pulse.t_ph;
  bool band_ok = false;
  for (const auto& iv : grid.covered) {
    if (iv.first <= -band && iv.second >= band) {
      band_ok = true;
      break;
    }
  }
  if (!band_ok) {
    throw InvalidInput(
        "k-grid does not cover the pulse band (+-10/t_ph) contiguously");
  }
  const ComplexResonances r = resonances(p);
  for (double x : {r.cavity_like().real() - pulse.omega_ph,
                   r.qubit_like().real() - pulse.omega_ph}) {
    bool ok = false;
    for (const auto& iv : grid.covered) {
      if (iv.first <= x && x <= iv.second) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw InvalidInput(
          "k-grid does not cover a single-excitation resonance line");
    }
  }
}

GridPulseNorm grid_pulse_norm(const KGrid& grid, const PulseParams& pulse) {
  GridPulseNorm out;
  for (std::size_t i = 0; i < grid.delta.size(); ++i) {
    out.on_grid +=
        grid.weight[i] *
        std::norm(pulse_spectrum(pulse, pulse.omega_ph + grid.delta[i]));
  }
  const double two_t = 2.0 * pulse.t_ph;
  for (const auto& iv : grid.covered) {
    out.covered_exact +=
        (std::atan(two_t * iv.second) - std::atan(two_t * iv.first)) / M_PI;
  }
  return out;
}

}  // namespace spr
