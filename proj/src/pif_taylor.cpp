#include "pifweno/pif_taylor.hpp"

#include <string>

#include "pifweno/stencils.hpp"

namespace pifweno {

template <int D>
std::array<State<D>, D> taylor_time_average(const FluxDerivatives<D>& d, double dt, const GasModel& gas) {
    // R = f_x + g_y = -q_t
    State<D> r = d.dflux[0];
    if constexpr (D == 2) r += d.dflux[1];

    // W = -(f_x + g_y)_t = q_tt
    State<D> w;
    if constexpr (D == 1) {
        w = flux_hessian_contract(d.q, 0, gas, d.dq[0], r) + flux_jacobian_apply(d.q, 0, gas, d.d2flux[0]);
    } else {
        w = flux_hessian_contract(d.q, 0, gas, d.dq[0], r) +
            flux_jacobian_apply(d.q, 0, gas, d.d2flux[0] + d.cross[1]) +
            flux_hessian_contract(d.q, 1, gas, d.dq[1], r) +
            flux_jacobian_apply(d.q, 1, gas, d.cross[0] + d.d2flux[1]);
    }

    const double c1 = 0.5 * dt;
    const double c2 = dt * dt / 6.0;
    std::array<State<D>, D> out;
    for (int a = 0; a < D; ++a) {
        const State<D> ft = -flux_jacobian_apply(d.q, a, gas, r);
        const State<D> ftt = flux_hessian_contract(d.q, a, gas, r, r) + flux_jacobian_apply(d.q, a, gas, w);
        out[a] = d.flux[a] + c1 * ft + c2 * ftt;
    }
    return out;
}

namespace {

template <int D>
void check_admissible(const Field<D>& q, const GasModel& gas, int lo_x, int hi_x, int lo_y, int hi_y) {
    for (int j = lo_y; j < hi_y; ++j)
        for (int i = lo_x; i < hi_x; ++i)
            if (!is_admissible(q(i, j), gas))
                throw InvalidStateError("time-averaged flux: inadmissible state at node (" + std::to_string(i) +
                                        ", " + std::to_string(j) + ")");
}

} // namespace

template <int D>
TimeAveragedFlux<D> time_averaged_flux(const Field<D>& q, double dt, const GasModel& gas, int reach) {
    const Grid<D>& grid = q.grid();
    if (grid.ghost < reach + 2) throw ConfigError("time-averaged flux: ghost width too small for reach");

    const int nx = grid.nx();
    const int ny = grid.ny();
    const int sx = reach + 2;
    const int sy = D == 2 ? reach + 2 : 0;
    check_admissible(q, gas, -sx, nx + sx, -sy, ny + sy);

    // Pointwise fluxes on the full stencil support.
    std::array<PaddedArray<D, State<D>>, D> pf;
    for (int a = 0; a < D; ++a) {
        pf[a] = PaddedArray<D, State<D>>(grid);
        for (int j = -sy; j < ny + sy; ++j)
            for (int i = -sx; i < nx + sx; ++i) pf[a](i, j) = flux(q(i, j), a, gas);
    }

    TimeAveragedFlux<D> out;
    out.dt = dt;
    for (int a = 0; a < D; ++a) out.flux[a] = PaddedArray<D, State<D>>(grid);

    const double dx = grid.spacing(0);
    const int ry = D == 2 ? reach : 0;
    using stencils::d1_central4;
    using stencils::d2_central4;

    for (int j = -ry; j < ny + ry; ++j) {
        for (int i = -reach; i < nx + reach; ++i) {
            FluxDerivatives<D> d;
            d.q = q(i, j);
            const stencils::Five<State<D>> qx5{q(i - 2, j), q(i - 1, j), d.q, q(i + 1, j), q(i + 2, j)};
            const stencils::Five<State<D>> fx5{pf[0](i - 2, j), pf[0](i - 1, j), pf[0](i, j), pf[0](i + 1, j),
                                               pf[0](i + 2, j)};
            d.flux[0] = fx5[2];
            d.dq[0] = d1_central4(qx5, dx);
            d.dflux[0] = d1_central4(fx5, dx);
            d.d2flux[0] = d2_central4(fx5, dx);
            if constexpr (D == 2) {
                const double dy = grid.spacing(1);
                const auto& g = pf[1];
                const stencils::Five<State<D>> qy5{q(i, j - 2), q(i, j - 1), d.q, q(i, j + 1), q(i, j + 2)};
                const stencils::Five<State<D>> gy5{g(i, j - 2), g(i, j - 1), g(i, j), g(i, j + 1), g(i, j + 2)};
                d.flux[1] = gy5[2];
                d.dq[1] = d1_central4(qy5, dy);
                d.dflux[1] = d1_central4(gy5, dy);
                d.d2flux[1] = d2_central4(gy5, dy);
                const auto& f = pf[0];
                d.cross[0] = stencils::dxy_central2(
                    stencils::Corners<State<D>>{f(i - 1, j - 1), f(i + 1, j - 1), f(i - 1, j + 1), f(i + 1, j + 1)},
                    dx, dy);
                d.cross[1] = stencils::dxy_central2(
                    stencils::Corners<State<D>>{g(i - 1, j - 1), g(i + 1, j - 1), g(i - 1, j + 1), g(i + 1, j + 1)},
                    dx, dy);
            }
            const auto avg = taylor_time_average<D>(d, dt, gas);
            for (int a = 0; a < D; ++a) out.flux[a](i, j) = avg[a];
        }
    }
    return out;
}

template std::array<State<1>, 1> taylor_time_average<1>(const FluxDerivatives<1>&, double, const GasModel&);
template std::array<State<2>, 2> taylor_time_average<2>(const FluxDerivatives<2>&, double, const GasModel&);
template TimeAveragedFlux<1> time_averaged_flux<1>(const Field<1>&, double, const GasModel&, int);
template TimeAveragedFlux<2> time_averaged_flux<2>(const Field<2>&, double, const GasModel&, int);

} // namespace pifweno
