#pragma once

// First-order Lax-Friedrichs fluxes and the low-order update they produce.
// With CFL <= 1/2 (global alpha) the update keeps density and pressure
// positive, which is what makes it a safe target for the limiter.

#include <array>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"
#include "pifweno/weno.hpp"

namespace pifweno {

/// The floor eps_0 on the positivity bounds.
inline constexpr double kPositivityFloor = 1e-13;

template <int D>
State<D> lf_flux(const State<D>& ql, const State<D>& qr, int axis, double alpha, const GasModel& gas) {
    return 0.5 * (flux(ql, axis, gas) + flux(qr, axis, gas)) - (0.5 * alpha) * (qr - ql);
}

template <int D>
struct LowOrderUpdate {
    std::array<FaceArray<D>, D> flux;   // low-order interface fluxes per axis
    PaddedArray<D, State<D>> q_hat;     // low-order updated states (interior cells)
    double eps_rho = 0.0;
    double eps_p = 0.0;
};

/// Full low-order update of every active interior cell, plus the global
/// positivity bounds eps_rho = min(min rho_hat, eps_0), eps_p = min(min p_hat, eps_0).
/// Throws InternalInvariantError if any updated density or pressure is not
/// positive (the CFL precondition was broken).
template <int D>
LowOrderUpdate<D> low_order_update(const Field<D>& q, double dt, double alpha, const GasModel& gas,
                                   const MaskedDomain* mask = nullptr, StepCounters* counters = nullptr);

} // namespace pifweno
