#pragma once

// Parametrized positivity-preserving flux limiter.
//
// For each cell the updated state is affine in the limiting parameters of its
// faces: q(theta) = q_hat + sum_k theta_k * c_k, where q_hat is the low-order
// update and c_k is the (signed, lambda-scaled) high-minus-low flux
// difference through face k. Faces are ordered L, R in 1D and L, R, D, U in
// 2D. The limiter first bounds theta so the density stays above eps_rho, then
// shrinks the box vertex by vertex so the pressure stays above eps_p, and
// finally takes the per-face minimum of the two adjacent cells' bounds.

#include <array>
#include <span>
#include <vector>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"
#include "pifweno/low_order.hpp"
#include "pifweno/weno.hpp"

namespace pifweno {

template <int D>
inline constexpr int kFacesPerCell = 2 * D;

/// Density bounds from the signed density contributions s_k = c_k[0]. The
/// directions whose contribution is negative share the bound
/// min(1, (eps_rho - rho_hat) / sum of negative contributions); the rest get 1.
/// A zero contribution counts as non-negative.
void density_bounds(std::span<const double> contributions, double rho_hat, double eps_rho,
                    std::span<double> bounds);

/// 1D density bounds (Lambda_{-1/2}, Lambda_{+1/2}) from
/// df_minus = lambda (F_hat - f_hat)^rho at i-1/2 and df_plus at i+1/2.
std::array<double, 2> density_bounds_1d(double rho_hat, double eps_rho, double df_minus, double df_plus);

/// 2D density bounds (L, R, D, U).
std::array<double, 4> density_bounds_2d(double rho_hat, double eps_rho, double df_minus, double df_plus,
                                        double dg_minus, double dg_plus);

/// Largest r in [0, 1] such that the state q_hat + r (q_target - q_hat) keeps
/// pressure >= eps_p. Returns 1 when q_target already satisfies it. Requires
/// p(q_hat) >= eps_p and positive density along the segment.
template <int D>
double pressure_rescale(const State<D>& q_hat, const State<D>& q_target, double eps_p, const GasModel& gas);

/// Rescaling factor for the vertex `vertex` (one theta per face) of a cell.
template <int D>
double pressure_rescale_vertex(const State<D>& q_hat, std::span<const State<D>> corrections,
                               std::span<const double> vertex, double eps_p, const GasModel& gas);

/// Both limiter steps for one cell: final box bounds, one per face.
template <int D>
std::array<double, kFacesPerCell<D>> cell_bounds(const State<D>& q_hat,
                                                 const std::array<State<D>, kFacesPerCell<D>>& corrections,
                                                 double eps_rho, double eps_p, const GasModel& gas);

template <int D>
struct LimiterOutput {
    std::array<FaceArray<D, double>, D> theta;
    std::vector<std::array<double, kFacesPerCell<D>>> bounds; // per interior cell, row-major
    double min_theta = 1.0;
    std::size_t limited_faces = 0; // faces with theta < 1
};

/// Per-face theta from per-cell bounds: the minimum of the two adjacent
/// cells. A neighbour outside the domain contributes 1, except across
/// periodic boundaries where the wrapped cell is used; inactive (masked)
/// cells also contribute 1.
template <int D>
LimiterOutput<D> assemble_theta(std::vector<std::array<double, kFacesPerCell<D>>> bounds, const Domain<D>& domain);

/// Full limiter pass for one step.
template <int D>
LimiterOutput<D> compute_limiter(const std::array<FaceArray<D>, D>& high, const LowOrderUpdate<D>& low, double dt,
                                 const Domain<D>& domain, const GasModel& gas, StepCounters* counters = nullptr);

/// theta (F_hat - f_hat) + f_hat.
template <int D>
State<D> limited_flux(const State<D>& high, const State<D>& low, double theta) {
    return theta * (high - low) + low;
}

} // namespace pifweno
