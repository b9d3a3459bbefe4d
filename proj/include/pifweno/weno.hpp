#pragma once

// Global Lax-Friedrichs splitting of the time-averaged fluxes, projection onto
// characteristic fields of the interface state, and fifth-order WENO
// reconstruction of the interface fluxes.

#include <array>
#include <vector>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"
#include "pifweno/pif_taylor.hpp"

namespace pifweno {

struct WenoParams {
    double power = 2.0;
    double epsilon = 1e-6;

    void validate() const;
};

/// Nonlinear weights and reconstructed value for one five-point stencil.
struct Weno5Result {
    std::array<double, 3> weights{};
    double value = 0.0;
};

/// Left-biased reconstruction at x_{k+1/2} from v_{k-2} .. v_{k+2}.
Weno5Result weno5_detail(const std::array<double, 5>& v, const WenoParams& params);

inline double weno5_reconstruct(const std::array<double, 5>& v, const WenoParams& params) {
    return weno5_detail(v, params).value;
}

/// Same stencil with the linear weights (1/10, 3/5, 3/10): the upwind
/// fifth-order interpolant.
double weno5_linear(const std::array<double, 5>& v);

/// Interface array along one axis. Along `axis` there are cells+1 faces;
/// face k sits between cells k-1 and k. The other axis is cell-indexed.
template <int D, class T = State<D>>
class FaceArray {
public:
    FaceArray() = default;
    FaceArray(const Grid<D>& g, int axis, T init = T{})
        : axis_(axis),
          width_(g.nx() + (axis == 0 ? 1 : 0)),
          height_(g.ny() + (axis == 1 ? 1 : 0)),
          data_(static_cast<std::size_t>(width_) * height_, init) {}

    int axis() const { return axis_; }
    int width() const { return width_; }
    int height() const { return height_; }
    T& operator()(int i, int j = 0) { return data_[static_cast<std::size_t>(j) * width_ + i]; }
    const T& operator()(int i, int j = 0) const { return data_[static_cast<std::size_t>(j) * width_ + i]; }
    std::vector<T>& raw() { return data_; }
    const std::vector<T>& raw() const { return data_; }

private:
    int axis_ = 0;
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Per-step instrumentation: how many full interface sweeps and limiter
/// passes were performed.
struct StepCounters {
    std::array<int, 2> reconstruction_sweeps{};
    int limiter_passes = 0;
    int low_order_passes = 0;
};

/// max over active interior nodes and axes of |u_a| + c. Throws on
/// inadmissible states.
template <int D>
double global_alpha(const Field<D>& q, const GasModel& gas, const MaskedDomain* mask = nullptr);

/// High-order interface fluxes along `axis` for every face bounding an
/// interior cell.
template <int D>
FaceArray<D> interface_flux(const TimeAveragedFlux<D>& avg, const Field<D>& q, int axis, double alpha,
                            const WenoParams& params, const GasModel& gas, StepCounters* counters = nullptr);

} // namespace pifweno
