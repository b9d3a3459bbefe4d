#pragma once

// Third-order Taylor approximation of the time-averaged fluxes
//   F_i = (1/dt) * int_{t^n}^{t^n+dt} f(q(t, x_i)) dt
// with temporal derivatives of the flux traded for spatial ones through the
// conservation law, and spatial derivatives taken with the fixed central
// stencils applied to pointwise flux and state arrays.

#include <array>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"

namespace pifweno {

/// Nodes beyond the interior, per side, at which the time-averaged fluxes are
/// built. Interface reconstruction at the outermost interface needs three.
inline constexpr int kFluxReach = 3;

template <int D>
struct TimeAveragedFlux {
    std::array<PaddedArray<D, State<D>>, D> flux; // F (x), G (y)
    double dt = 0.0;
};

/// Builds F (1D) or F and G (2D) at every node within `reach` cells of the
/// interior. `q` must be ghost-complete with ghost width >= reach + 2, and
/// every state the stencils touch must be admissible.
template <int D>
TimeAveragedFlux<D> time_averaged_flux(const Field<D>& q, double dt, const GasModel& gas,
                                       int reach = kFluxReach);

inline TimeAveragedFlux<1> time_averaged_flux_1d(const Field<1>& q, double dt, const GasModel& gas) {
    return time_averaged_flux<1>(q, dt, gas);
}
inline TimeAveragedFlux<2> time_averaged_flux_2d(const Field<2>& q, double dt, const GasModel& gas) {
    return time_averaged_flux<2>(q, dt, gas);
}

/// Pointwise time-averaged flux from precomputed spatial data. Exposed so the
/// temporal expansion can be tested independently of grids.
template <int D>
struct FluxDerivatives {
    State<D> q;
    std::array<State<D>, D> flux;     // f, g
    std::array<State<D>, D> dq;       // q_x, q_y
    std::array<State<D>, D> dflux;    // f_x, g_y
    std::array<State<D>, D> d2flux;   // f_xx, g_yy
    std::array<State<D>, D> cross;    // f_xy, g_xy (unused in 1D)
};

template <int D>
std::array<State<D>, D> taylor_time_average(const FluxDerivatives<D>& d, double dt, const GasModel& gas);

} // namespace pifweno
