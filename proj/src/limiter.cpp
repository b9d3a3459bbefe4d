#include "pifweno/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pifweno {

void density_bounds(std::span<const double> contributions, double rho_hat, double eps_rho,
                    std::span<double> bounds) {
    double negative_sum = 0.0;
    for (double s : contributions)
        if (s < 0.0) negative_sum += s;
    double shared = 1.0;
    if (negative_sum < 0.0) shared = std::min(1.0, (eps_rho - rho_hat) / negative_sum);
    shared = std::max(shared, 0.0);
    for (std::size_t k = 0; k < contributions.size(); ++k) bounds[k] = contributions[k] < 0.0 ? shared : 1.0;
}

std::array<double, 2> density_bounds_1d(double rho_hat, double eps_rho, double df_minus, double df_plus) {
    const std::array<double, 2> s{df_minus, -df_plus};
    std::array<double, 2> out;
    density_bounds(s, rho_hat, eps_rho, out);
    return out;
}

std::array<double, 4> density_bounds_2d(double rho_hat, double eps_rho, double df_minus, double df_plus,
                                        double dg_minus, double dg_plus) {
    const std::array<double, 4> s{df_minus, -df_plus, dg_minus, -dg_plus};
    std::array<double, 4> out;
    density_bounds(s, rho_hat, eps_rho, out);
    return out;
}

namespace {

template <int D>
bool pressure_ok(const State<D>& q, double eps_p, const GasModel& gas) {
    return q[0] > 0.0 && pressure(q, gas) >= eps_p;
}

// Smallest root in [0, 1] of a r^2 + b r + c, or NaN.
double smallest_unit_root(double a, double b, double c) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    double best = std::numeric_limits<double>::quiet_NaN();
    auto consider = [&](double r) {
        if (r >= 0.0 && r <= 1.0 && !(r >= best)) best = r;
    };
    if (std::abs(a) < 1e-14 * scale) {
        if (b != 0.0) consider(-c / b);
        return best;
    }
    const double disc = std::max(0.0, b * b - 4.0 * a * c);
    const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    consider(qq / a);
    if (qq != 0.0) consider(c / qq);
    return best;
}

} // namespace

template <int D>
double pressure_rescale(const State<D>& q_hat, const State<D>& q_target, double eps_p, const GasModel& gas) {
    if (pressure_ok(q_target, eps_p, gas)) return 1.0;
    if (!pressure_ok(q_hat, eps_p, gas))
        throw InternalInvariantError("pressure rescale: low-order state is below the pressure floor");

    const State<D> d = q_target - q_hat;
    const double gm1 = gas.gamma - 1.0;
    const double rho = q_hat[0];
    const double e = q_hat.energy();
    const double drho = d[0];
    const double de = d.energy();
    double m2 = 0.0;
    double mdm = 0.0;
    double dm2 = 0.0;
    for (int k = 0; k < D; ++k) {
        m2 += q_hat[1 + k] * q_hat[1 + k];
        mdm += q_hat[1 + k] * d[1 + k];
        dm2 += d[1 + k] * d[1 + k];
    }
    // 2 rho(r) (p(r) - eps_p) = a r^2 + b r + c
    const double c = gm1 * (2.0 * rho * e - m2) - 2.0 * eps_p * rho;
    const double b = gm1 * (2.0 * rho * de + 2.0 * e * drho - 2.0 * mdm) - 2.0 * eps_p * drho;
    const double a = gm1 * (2.0 * drho * de - dm2);

    double r = smallest_unit_root(a, b, c);
    if (std::isnan(r)) r = 1.0;

    auto feasible = [&](double s) { return pressure_ok(q_hat + s * d, eps_p, gas); };
    for (int k = 0; k < 10 && !feasible(r); ++k) r *= 1.0 - 1e-10;
    if (feasible(r)) return r;

    // Bisection on the exact pressure; r = 0 is feasible by construction.
    double lo = 0.0;
    double hi = std::min(r, 1.0);
    if (!(hi > 0.0)) hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (feasible(mid) ? lo : hi) = mid;
    }
    return lo;
}

template <int D>
double pressure_rescale_vertex(const State<D>& q_hat, std::span<const State<D>> corrections,
                               std::span<const double> vertex, double eps_p, const GasModel& gas) {
    State<D> qa = q_hat;
    for (std::size_t k = 0; k < corrections.size(); ++k) qa += vertex[k] * corrections[k];
    return pressure_rescale(q_hat, qa, eps_p, gas);
}

template <int D>
std::array<double, kFacesPerCell<D>> cell_bounds(const State<D>& q_hat,
                                                 const std::array<State<D>, kFacesPerCell<D>>& corrections,
                                                 double eps_rho, double eps_p, const GasModel& gas) {
    constexpr int nf = kFacesPerCell<D>;
    std::array<double, nf> contrib;
    for (int k = 0; k < nf; ++k) contrib[k] = corrections[k][0];
    std::array<double, nf> rho_bounds;
    density_bounds(contrib, q_hat[0], eps_rho, rho_bounds);

    std::array<double, nf> out;
    out.fill(std::numeric_limits<double>::infinity());
    for (unsigned bits = 1; bits < (1u << nf); ++bits) {
        State<D> qa = q_hat;
        for (int k = 0; k < nf; ++k)
            if (bits & (1u << k)) qa += rho_bounds[k] * corrections[k];
        const double r = pressure_rescale(q_hat, qa, eps_p, gas);
        for (int k = 0; k < nf; ++k)
            if (bits & (1u << k)) out[k] = std::min(out[k], r * rho_bounds[k]);
    }
    return out;
}

template <int D>
LimiterOutput<D> assemble_theta(std::vector<std::array<double, kFacesPerCell<D>>> bounds, const Domain<D>& domain) {
    const Grid<D>& grid = domain.grid;
    const int nx = grid.nx();
    const int ny = grid.ny();
    LimiterOutput<D> out;

    auto cell_bound = [&](int i, int j, int face, int axis) -> double {
        const int n = axis == 0 ? nx : ny;
        int& idx = axis == 0 ? i : j;
        if (idx < 0 || idx >= n) {
            if (!domain.bcs.periodic(axis)) return 1.0;
            idx = (idx + n) % n;
        }
        if (!domain.is_active(i, j)) return 1.0;
        return bounds[static_cast<std::size_t>(j) * nx + i][face];
    };

    for (int a = 0; a < D; ++a) {
        FaceArray<D, double> theta(grid, a, 1.0);
        const int di = a == 0 ? 1 : 0;
        const int dj = a == 1 ? 1 : 0;
        for (int j = 0; j < theta.height(); ++j)
            for (int i = 0; i < theta.width(); ++i) {
                // lower/left cell uses its "+" face (R or U), upper/right its "-" face (L or D)
                const double lower = cell_bound(i - di, j - dj, 2 * a + 1, a);
                const double upper = cell_bound(i, j, 2 * a, a);
                const double t = std::clamp(std::min(lower, upper), 0.0, 1.0);
                theta(i, j) = t;
                out.min_theta = std::min(out.min_theta, t);
                if (t < 1.0) ++out.limited_faces;
            }
        out.theta[a] = std::move(theta);
    }
    out.bounds = std::move(bounds);
    return out;
}

template <int D>
LimiterOutput<D> compute_limiter(const std::array<FaceArray<D>, D>& high, const LowOrderUpdate<D>& low, double dt,
                                 const Domain<D>& domain, const GasModel& gas, StepCounters* counters) {
    constexpr int nf = kFacesPerCell<D>;
    const Grid<D>& grid = domain.grid;
    const int nx = grid.nx();
    const int ny = grid.ny();
    std::vector<std::array<double, nf>> bounds(static_cast<std::size_t>(nx) * ny);

    std::array<double, D> lambda;
    for (int a = 0; a < D; ++a) lambda[a] = dt / grid.spacing(a);

    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            auto& bd = bounds[static_cast<std::size_t>(j) * nx + i];
            if (!domain.is_active(i, j)) {
                bd.fill(1.0);
                continue;
            }
            std::array<State<D>, nf> corr;
            for (int a = 0; a < D; ++a) {
                const int di = a == 0 ? 1 : 0;
                const int dj = a == 1 ? 1 : 0;
                const auto& hi = high[a];
                const auto& lo = low.flux[a];
                corr[2 * a] = lambda[a] * (hi(i, j) - lo(i, j));
                corr[2 * a + 1] = -lambda[a] * (hi(i + di, j + dj) - lo(i + di, j + dj));
            }
            bd = cell_bounds<D>(low.q_hat(i, j), corr, low.eps_rho, low.eps_p, gas);
        }
    auto out = assemble_theta<D>(std::move(bounds), domain);
    if (counters) ++counters->limiter_passes;
    return out;
}

template double pressure_rescale<1>(const State<1>&, const State<1>&, double, const GasModel&);
template double pressure_rescale<2>(const State<2>&, const State<2>&, double, const GasModel&);
template double pressure_rescale_vertex<1>(const State<1>&, std::span<const State<1>>, std::span<const double>,
                                           double, const GasModel&);
template double pressure_rescale_vertex<2>(const State<2>&, std::span<const State<2>>, std::span<const double>,
                                           double, const GasModel&);
template std::array<double, 2> cell_bounds<1>(const State<1>&, const std::array<State<1>, 2>&, double, double,
                                              const GasModel&);
template std::array<double, 4> cell_bounds<2>(const State<2>&, const std::array<State<2>, 4>&, double, double,
                                              const GasModel&);
template LimiterOutput<1> assemble_theta<1>(std::vector<std::array<double, 2>>, const Domain<1>&);
template LimiterOutput<2> assemble_theta<2>(std::vector<std::array<double, 4>>, const Domain<2>&);
template LimiterOutput<1> compute_limiter<1>(const std::array<FaceArray<1>, 1>&, const LowOrderUpdate<1>&, double,
                                             const Domain<1>&, const GasModel&, StepCounters*);
template LimiterOutput<2> compute_limiter<2>(const std::array<FaceArray<2>, 2>&, const LowOrderUpdate<2>&, double,
                                             const Domain<2>&, const GasModel&, StepCounters*);

} // namespace pifweno
