#ifndef SPR_KGRID_HPP
#define SPR_KGRID_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "spr/params.hpp"
#include "spr/resonances.hpp"

namespace spr {

// Quadrature layout for integrals over the waveguide wave vector. Nodes are
// stored as offsets delta = v*k - omega_ph so rotating-frame phases stay
// small. The default layout places Gauss-Legendre panels over every spectral
// feature the transport amplitudes develop (pulse line, pulled cavity lines,
// qubit line and its mirror image) with panel widths capped so the slowest
// surviving oscillation e^{i delta s} is still resolved at the measurement
// horizon, plus geometric far-tail panels for the 1/delta^2 pulse skirt.
struct GridOptions {
  double span_scale = 1.0;  // scales the densely filled core (+- 60/t_ph)
  double density = 1.0;     // >1 narrows the panel phase cap (refinement)
  double tail_scale = 1.0;  // scales far-tail reach and island extents
  int nodes_per_panel = 32;

  // Legacy layout: uniform nodes with trapezoid weights over
  // +- max(60/t_ph, 30 kappa, 4|E+ - E-|). Kept for failure-mode studies;
  // it cannot resolve the pulse line at realistic parameters.
  bool uniform = false;
  int uniform_nodes = 1200;
  double uniform_halfspan = 0.0;  // 0: the automatic span above

  // Refinement ladder used by convergence scans: level 0 is *this,
  // each level tightens density and pushes the covered tails outward.
  GridOptions refined(int level) const;
};

struct KGrid {
  std::vector<double> delta;   // node offsets v*k - omega_ph (rad/s)
  std::vector<double> weight;  // positive quadrature weights
  // Merged coverage intervals in offset coordinates, ascending, disjoint.
  std::vector<std::pair<double, double>> covered;
  double halfspan = 0.0;  // max |delta| covered
  double s_max = 0.0;     // time horizon the panel widths resolve
  std::size_t size() const { return delta.size(); }
};

KGrid build_grid(const SystemParams& p, const PulseParams& pulse, double t_m,
                 const GridOptions& opt = {});

// Rejects grids that cannot represent the problem: the pulse band
// +- 10/t_ph must be covered without gaps and both single-excitation
// resonances must fall inside covered intervals. Throws InvalidInput.
void check_coverage(const KGrid& grid, const SystemParams& p,
                    const PulseParams& pulse);

// Sum over nodes of w |xi(delta)|^2, the on-grid photon norm. The exact
// counterpart restricted to the covered intervals has the closed form
// (1/pi) * sum of arctan(2 t_ph delta) differences; both are reported so
// tests can separate quadrature error from uncovered-tail mass.
struct GridPulseNorm {
  double on_grid = 0.0;
  double covered_exact = 0.0;
};
GridPulseNorm grid_pulse_norm(const KGrid& grid, const PulseParams& pulse);

}  // namespace spr

#endif
