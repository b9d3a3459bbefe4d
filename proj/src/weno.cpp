#include "pifweno/weno.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pifweno {

void WenoParams::validate() const {
    if (!(power >= 1.0)) throw ConfigError("WENO power must be >= 1");
    if (!(epsilon > 0.0)) throw ConfigError("WENO epsilon must be positive");
}

namespace {

inline double weight_denominator(double beta, const WenoParams& params) {
    const double s = params.epsilon + beta;
    if (params.power == 2.0) return s * s;
    return std::pow(s, params.power);
}

inline std::array<double, 3> candidates(const std::array<double, 5>& v) {
    return {(2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0, (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0,
            (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0};
}

constexpr std::array<double, 3> kLinearWeights{0.1, 0.6, 0.3};

} // namespace

Weno5Result weno5_detail(const std::array<double, 5>& v, const WenoParams& params) {
    constexpr double c13 = 13.0 / 12.0;
    const double a0 = v[0] - 2.0 * v[1] + v[2];
    const double b0 = v[0] - 4.0 * v[1] + 3.0 * v[2];
    const double a1 = v[1] - 2.0 * v[2] + v[3];
    const double b1 = v[1] - v[3];
    const double a2 = v[2] - 2.0 * v[3] + v[4];
    const double b2 = 3.0 * v[2] - 4.0 * v[3] + v[4];
    const std::array<double, 3> beta{c13 * a0 * a0 + 0.25 * b0 * b0, c13 * a1 * a1 + 0.25 * b1 * b1,
                                     c13 * a2 * a2 + 0.25 * b2 * b2};

    std::array<double, 3> w;
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) {
        w[k] = kLinearWeights[k] / weight_denominator(beta[k], params);
        sum += w[k];
    }
    const auto p = candidates(v);
    Weno5Result r;
    for (int k = 0; k < 3; ++k) {
        r.weights[k] = w[k] / sum;
        r.value += r.weights[k] * p[k];
    }
    return r;
}

double weno5_linear(const std::array<double, 5>& v) {
    const auto p = candidates(v);
    return kLinearWeights[0] * p[0] + kLinearWeights[1] * p[1] + kLinearWeights[2] * p[2];
}

template <int D>
double global_alpha(const Field<D>& q, const GasModel& gas, const MaskedDomain* mask) {
    const Grid<D>& grid = q.grid();
    double alpha = 0.0;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            if (mask && !mask->active[static_cast<std::size_t>(j) * grid.nx() + i]) continue;
            const State<D>& s = q(i, j);
            if (!is_admissible(s, gas))
                throw InvalidStateError("global_alpha: inadmissible state at cell (" + std::to_string(i) + ", " +
                                        std::to_string(j) + ")");
            const double c = sound_speed(s, gas);
            for (int a = 0; a < D; ++a) alpha = std::max(alpha, std::abs(s[1 + a] / s[0]) + c);
        }
    return alpha;
}

template <int D>
FaceArray<D> interface_flux(const TimeAveragedFlux<D>& avg, const Field<D>& q, int axis, double alpha,
                            const WenoParams& params, const GasModel& gas, StepCounters* counters) {
    constexpr int m = D + 2;
    const Grid<D>& grid = q.grid();
    const auto& fa = avg.flux[axis];
    FaceArray<D> out(grid, axis);
    const int di = axis == 0 ? 1 : 0;
    const int dj = axis == 1 ? 1 : 0;

    std::array<State<D>, 6> plus;
    std::array<State<D>, 6> minus;
    for (int j = 0; j < out.height(); ++j) {
        for (int i = 0; i < out.width(); ++i) {
            // Face between cells (i-di, j-dj) and (i, j).
            const State<D>& ql = q(i - di, j - dj);
            const State<D>& qr = q(i, j);
            const State<D> mid = 0.5 * (ql + qr);
            if (!is_admissible(mid, gas))
                throw InvalidStateError("interface_flux: inadmissible interface state at face (" +
                                        std::to_string(i) + ", " + std::to_string(j) + ")");
            const EigenSystem<D> es = eigensystem(mid, axis, gas);

            for (int k = 0; k < 6; ++k) {
                const int ii = i + (k - 3) * di;
                const int jj = j + (k - 3) * dj;
                const State<D> wf = apply<D>(es.left, fa(ii, jj));
                const State<D> wq = apply<D>(es.left, q(ii, jj));
                plus[k] = 0.5 * (wf + alpha * wq);
                minus[k] = 0.5 * (wf - alpha * wq);
            }
            State<D> wface;
            for (int c = 0; c < m; ++c) {
                const std::array<double, 5> vp{plus[0][c], plus[1][c], plus[2][c], plus[3][c], plus[4][c]};
                const std::array<double, 5> vm{minus[5][c], minus[4][c], minus[3][c], minus[2][c], minus[1][c]};
                wface[c] = weno5_reconstruct(vp, params) + weno5_reconstruct(vm, params);
            }
            out(i, j) = apply<D>(es.right, wface);
        }
    }
    if (counters) ++counters->reconstruction_sweeps[axis];
    return out;
}

template double global_alpha<1>(const Field<1>&, const GasModel&, const MaskedDomain*);
template double global_alpha<2>(const Field<2>&, const GasModel&, const MaskedDomain*);
template FaceArray<1> interface_flux<1>(const TimeAveragedFlux<1>&, const Field<1>&, int, double,
                                        const WenoParams&, const GasModel&, StepCounters*);
template FaceArray<2> interface_flux<2>(const TimeAveragedFlux<2>&, const Field<2>&, int, double,
                                        const WenoParams&, const GasModel&, StepCounters*);

} // namespace pifweno
