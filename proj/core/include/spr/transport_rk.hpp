#ifndef SPR_TRANSPORT_RK_HPP
#define SPR_TRANSPORT_RK_HPP

#include "spr/kgrid.hpp"
#include "spr/params.hpp"
#include "spr/transport.hpp"

namespace spr {

// Brute-force cross-check of the closed-form propagation: the same frame
// equations integrated with an adaptive embedded Runge-Kutta scheme on the
// same grid. The two-photon pair field is not integrated (it would be an
// O(n^2) state vector); everything else is. Requires t0 == 0. Intended for
// modest grids in tests, not for production runs.
SingleExcitationState ground_state_rk(const SystemParams& p,
                                      const PulseParams& pulse,
                                      const KGrid& grid, double t,
                                      double rtol = 1e-9,
                                      const SolveOptions& opt = {});

TwoExcitationState excited_state_rk(const SystemParams& p,
                                    const PulseParams& pulse,
                                    const KGrid& grid, double t,
                                    double rtol = 1e-9,
                                    const SolveOptions& opt = {});

}  // namespace spr

#endif
