#include "pifweno/low_order.hpp"

#include <algorithm>
#include <string>

namespace pifweno {

template <int D>
LowOrderUpdate<D> low_order_update(const Field<D>& q, double dt, double alpha, const GasModel& gas,
                                   const MaskedDomain* mask, StepCounters* counters) {
    const Grid<D>& grid = q.grid();
    LowOrderUpdate<D> out;
    for (int a = 0; a < D; ++a) {
        FaceArray<D> faces(grid, a);
        const int di = a == 0 ? 1 : 0;
        const int dj = a == 1 ? 1 : 0;
        for (int j = 0; j < faces.height(); ++j)
            for (int i = 0; i < faces.width(); ++i) faces(i, j) = lf_flux(q(i - di, j - dj), q(i, j), a, alpha, gas);
        out.flux[a] = std::move(faces);
    }

    out.q_hat = PaddedArray<D, State<D>>(grid);
    double min_rho = kPositivityFloor;
    double min_p = kPositivityFloor;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            if (mask && !mask->active[static_cast<std::size_t>(j) * grid.nx() + i]) {
                out.q_hat(i, j) = q(i, j);
                continue;
            }
            State<D> s = q(i, j) - (dt / grid.spacing(0)) * (out.flux[0](i + 1, j) - out.flux[0](i, j));
            if constexpr (D == 2) s -= (dt / grid.spacing(1)) * (out.flux[1](i, j + 1) - out.flux[1](i, j));
            out.q_hat(i, j) = s;
            const double p = pressure(s, gas);
            if (!(s[0] > 0.0) || !(p > 0.0))
                throw InternalInvariantError("low-order update lost positivity at cell (" + std::to_string(i) +
                                             ", " + std::to_string(j) + "): rho=" + std::to_string(s[0]) +
                                             " p=" + std::to_string(p));
            min_rho = std::min(min_rho, s[0]);
            min_p = std::min(min_p, p);
        }
    out.eps_rho = min_rho;
    out.eps_p = min_p;
    if (counters) ++counters->low_order_passes;
    return out;
}

template LowOrderUpdate<1> low_order_update<1>(const Field<1>&, double, double, const GasModel&,
                                               const MaskedDomain*, StepCounters*);
template LowOrderUpdate<2> low_order_update<2>(const Field<2>&, double, double, const GasModel&,
                                               const MaskedDomain*, StepCounters*);

} // namespace pifweno
