#pragma once

// Ideal-gas Euler physics in conserved variables q = (rho, rho*u_1..rho*u_D, E).
// Everything here is a pure function of its arguments. Nothing is clamped:
// negative densities or pressures are returned as computed so the limiter
// (and the tests) can see them.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "pifweno/errors.hpp"

namespace pifweno {

template <int D>
concept SupportedDimension = (D == 1 || D == 2);

/// Conserved state at one grid point. Component 0 is density, 1..D momentum,
/// D+1 total energy.
template <int D>
    requires SupportedDimension<D>
struct State {
    static constexpr int kDim = D;
    static constexpr int kSize = D + 2;
    static constexpr int kEnergy = D + 1;

    std::array<double, kSize> v{};

    constexpr double& operator[](std::size_t k) { return v[k]; }
    constexpr double operator[](std::size_t k) const { return v[k]; }

    constexpr double rho() const { return v[0]; }
    constexpr double momentum(int axis) const { return v[1 + axis]; }
    constexpr double energy() const { return v[kEnergy]; }

    friend constexpr State operator+(State a, const State& b) {
        for (int k = 0; k < kSize; ++k) a.v[k] += b.v[k];
        return a;
    }
    friend constexpr State operator-(State a, const State& b) {
        for (int k = 0; k < kSize; ++k) a.v[k] -= b.v[k];
        return a;
    }
    friend constexpr State operator-(State a) {
        for (int k = 0; k < kSize; ++k) a.v[k] = -a.v[k];
        return a;
    }
    friend constexpr State operator*(double s, State a) {
        for (int k = 0; k < kSize; ++k) a.v[k] *= s;
        return a;
    }
    friend constexpr State operator*(State a, double s) { return s * a; }
    constexpr State& operator+=(const State& b) {
        for (int k = 0; k < kSize; ++k) v[k] += b.v[k];
        return *this;
    }
    constexpr State& operator-=(const State& b) {
        for (int k = 0; k < kSize; ++k) v[k] -= b.v[k];
        return *this;
    }
    friend constexpr bool operator==(const State&, const State&) = default;
};

template <int D>
using Matrix = std::array<std::array<double, D + 2>, D + 2>;

template <int D>
State<D> apply(const Matrix<D>& a, const State<D>& x) {
    State<D> y;
    for (int r = 0; r < D + 2; ++r) {
        double s = 0.0;
        for (int c = 0; c < D + 2; ++c) s += a[r][c] * x[c];
        y[r] = s;
    }
    return y;
}

template <int D>
Matrix<D> multiply(const Matrix<D>& a, const Matrix<D>& b) {
    Matrix<D> out{};
    for (int r = 0; r < D + 2; ++r)
        for (int c = 0; c < D + 2; ++c) {
            double s = 0.0;
            for (int k = 0; k < D + 2; ++k) s += a[r][k] * b[k][c];
            out[r][c] = s;
        }
    return out;
}

struct GasModel {
    double gamma = 1.4;

    GasModel() = default;
    explicit GasModel(double g) : gamma(g) {
        if (!(g > 1.0)) throw ConfigError("gamma must exceed 1, got " + std::to_string(g));
    }
};

/// Primitive variables (rho, u_1..u_D, p).
template <int D>
struct Primitive {
    double rho = 0.0;
    std::array<double, D> u{};
    double p = 0.0;
};

template <int D>
double kinetic_energy(const State<D>& q) {
    double m2 = 0.0;
    for (int a = 0; a < D; ++a) m2 += q[1 + a] * q[1 + a];
    return 0.5 * m2 / q[0];
}

template <int D>
double pressure(const State<D>& q, const GasModel& gas) {
    if (q[0] == 0.0) throw InvalidStateError("pressure: zero density");
    return (gas.gamma - 1.0) * (q.energy() - kinetic_energy(q));
}

/// rho > eps and p > eps, tested exactly.
template <int D>
bool is_admissible(const State<D>& q, const GasModel& gas, double eps = 0.0) {
    if (!(q[0] > eps)) return false;
    return (gas.gamma - 1.0) * (q.energy() - kinetic_energy(q)) > eps;
}

template <int D>
double sound_speed(const State<D>& q, const GasModel& gas) {
    return std::sqrt(gas.gamma * pressure(q, gas) / q[0]);
}

template <int D>
Primitive<D> to_primitive(const State<D>& q, const GasModel& gas) {
    Primitive<D> w;
    w.rho = q[0];
    for (int a = 0; a < D; ++a) w.u[a] = q[1 + a] / q[0];
    w.p = pressure(q, gas);
    return w;
}

template <int D>
State<D> to_conserved(const Primitive<D>& w, const GasModel& gas) {
    State<D> q;
    q[0] = w.rho;
    double u2 = 0.0;
    for (int a = 0; a < D; ++a) {
        q[1 + a] = w.rho * w.u[a];
        u2 += w.u[a] * w.u[a];
    }
    q[D + 1] = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * u2;
    return q;
}

/// Euler flux along `axis`: (m_a, m_a u + p e_a, (E + p) u_a).
template <int D>
State<D> flux(const State<D>& q, int axis, const GasModel& gas) {
    const double p = pressure(q, gas);
    const double ua = q[1 + axis] / q[0];
    State<D> f;
    f[0] = q[1 + axis];
    for (int k = 0; k < D; ++k) f[1 + k] = ua * q[1 + k];
    f[1 + axis] += p;
    f[D + 1] = (q.energy() + p) * ua;
    return f;
}

namespace detail {

// First and second directional derivatives of the velocity and pressure maps
// q -> u_k = m_k / rho and q -> p. Shared by the Jacobian-vector product and
// the Hessian contraction.
template <int D>
struct FluxKinematics {
    double rho;
    std::array<double, D> u;
    double energy;
    double p;
    double gm1;

    FluxKinematics(const State<D>& q, const GasModel& gas)
        : rho(q[0]), energy(q.energy()), gm1(gas.gamma - 1.0) {
        double ke = 0.0;
        for (int k = 0; k < D; ++k) {
            u[k] = q[1 + k] / rho;
            ke += u[k] * q[1 + k];
        }
        p = gm1 * (energy - 0.5 * ke);
    }

    std::array<double, D> du(const State<D>& v) const {
        std::array<double, D> out;
        for (int k = 0; k < D; ++k) out[k] = (v[1 + k] - u[k] * v[0]) / rho;
        return out;
    }

    double dp(const State<D>& v) const {
        double s = 0.0;
        for (int k = 0; k < D; ++k) s += u[k] * v[1 + k];
        double u2 = 0.0;
        for (int k = 0; k < D; ++k) u2 += u[k] * u[k];
        return gm1 * (v[D + 1] - s + 0.5 * u2 * v[0]);
    }
};

} // namespace detail

/// (df/dq) . v without forming the matrix.
template <int D>
State<D> flux_jacobian_apply(const State<D>& q, int axis, const GasModel& gas, const State<D>& v) {
    const detail::FluxKinematics<D> k(q, gas);
    const auto du = k.du(v);
    const double dp = k.dp(v);
    const double ua = k.u[axis];
    State<D> out;
    out[0] = v[1 + axis];
    for (int c = 0; c < D; ++c) out[1 + c] = v[1 + axis] * k.u[c] + q[1 + axis] * du[c];
    out[1 + axis] += dp;
    out[D + 1] = (v[D + 1] + dp) * ua + (k.energy + k.p) * du[axis];
    return out;
}

template <int D>
Matrix<D> flux_jacobian(const State<D>& q, int axis, const GasModel& gas) {
    Matrix<D> a{};
    for (int c = 0; c < D + 2; ++c) {
        State<D> e;
        e[c] = 1.0;
        const State<D> col = flux_jacobian_apply(q, axis, gas, e);
        for (int r = 0; r < D + 2; ++r) a[r][c] = col[r];
    }
    return a;
}

/// Bilinear contraction (d^2 f / dq^2)(v, w). Symmetric in (v, w); the mass
/// component is identically zero.
template <int D>
State<D> flux_hessian_contract(const State<D>& q, int axis, const GasModel& gas, const State<D>& v,
                               const State<D>& w) {
    const detail::FluxKinematics<D> k(q, gas);
    const auto duv = k.du(v);
    const auto duw = k.du(w);
    const double dpv = k.dp(v);
    const double dpw = k.dp(w);

    std::array<double, D> d2u;
    double dudu = 0.0;
    for (int c = 0; c < D; ++c) {
        d2u[c] = -(v[0] * duw[c] + w[0] * duv[c]) / k.rho;
        dudu += duv[c] * duw[c];
    }
    const double d2p = -k.gm1 * k.rho * dudu;

    State<D> out;
    out[0] = 0.0;
    for (int c = 0; c < D; ++c)
        out[1 + c] = v[1 + axis] * duw[c] + w[1 + axis] * duv[c] + q[1 + axis] * d2u[c];
    out[1 + axis] += d2p;
    out[D + 1] = d2p * k.u[axis] + (w[D + 1] + dpw) * duv[axis] + (v[D + 1] + dpv) * duw[axis] +
                 (k.energy + k.p) * d2u[axis];
    return out;
}

template <int D>
struct EigenSystem {
    State<D> eigenvalues;          // ascending: u-c, u (D times), u+c
    Matrix<D> right{};             // columns are right eigenvectors
    Matrix<D> left{};              // rows are left eigenvectors, left * right = I
};

/// Eigensystem of df/dq along `axis`. The state must be strictly admissible;
/// no absolute values are taken to rescue a bad sound speed.
template <int D>
EigenSystem<D> eigensystem(const State<D>& q, int axis, const GasModel& gas) {
    if (!is_admissible(q, gas)) throw InvalidStateError("eigensystem: inadmissible state");
    const double rho = q[0];
    std::array<double, D> u;
    double u2 = 0.0;
    for (int k = 0; k < D; ++k) {
        u[k] = q[1 + k] / rho;
        u2 += u[k] * u[k];
    }
    const double p = pressure(q, gas);
    const double c = std::sqrt(gas.gamma * p / rho);
    const double h = (q.energy() + p) / rho;
    const double un = u[axis];
    const double b1 = (gas.gamma - 1.0) / (c * c);
    const double b2 = 0.5 * u2 * b1;
    constexpr int m = D + 2;
    const int n = 1 + axis;

    EigenSystem<D> es;
    // acoustic u-c
    es.eigenvalues[0] = un - c;
    es.right[0][0] = 1.0;
    for (int k = 0; k < D; ++k) es.right[1 + k][0] = u[k];
    es.right[n][0] -= c;
    es.right[m - 1][0] = h - un * c;
    es.left[0][0] = 0.5 * (b2 + un / c);
    for (int k = 0; k < D; ++k) es.left[0][1 + k] = -0.5 * b1 * u[k];
    es.left[0][n] -= 0.5 / c;
    es.left[0][m - 1] = 0.5 * b1;

    // entropy wave
    es.eigenvalues[1] = un;
    es.right[0][1] = 1.0;
    for (int k = 0; k < D; ++k) es.right[1 + k][1] = u[k];
    es.right[m - 1][1] = 0.5 * u2;
    es.left[1][0] = 1.0 - b2;
    for (int k = 0; k < D; ++k) es.left[1][1 + k] = b1 * u[k];
    es.left[1][m - 1] = -b1;

    // shear wave (2D only)
    if constexpr (D == 2) {
        const int t = 1 + (1 - axis);
        es.eigenvalues[2] = un;
        es.right[t][2] = 1.0;
        es.right[m - 1][2] = u[1 - axis];
        es.left[2][0] = -u[1 - axis];
        es.left[2][t] = 1.0;
    }

    // acoustic u+c
    es.eigenvalues[m - 1] = un + c;
    es.right[0][m - 1] = 1.0;
    for (int k = 0; k < D; ++k) es.right[1 + k][m - 1] = u[k];
    es.right[n][m - 1] += c;
    es.right[m - 1][m - 1] = h + un * c;
    es.left[m - 1][0] = 0.5 * (b2 - un / c);
    for (int k = 0; k < D; ++k) es.left[m - 1][1 + k] = -0.5 * b1 * u[k];
    es.left[m - 1][n] += 0.5 / c;
    es.left[m - 1][m - 1] = 0.5 * b1;
    return es;
}

} // namespace pifweno
