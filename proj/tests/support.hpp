#pragma once

#include <cmath>
#include <random>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"

namespace testing_support {

using pifweno::GasModel;
using pifweno::Primitive;
using pifweno::State;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// log-uniform in [lo, hi]
inline double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

template <int D>
State<D> random_state(const GasModel& gas, double rho_lo = 0.1, double rho_hi = 5.0, double p_lo = 0.1,
                      double p_hi = 5.0, double u_max = 2.0) {
    Primitive<D> w;
    w.rho = log_uniform(rho_lo, rho_hi);
    for (auto& u : w.u) u = uniform(-u_max, u_max);
    w.p = log_uniform(p_lo, p_hi);
    return pifweno::to_conserved(w, gas);
}

template <int D>
double rel_diff(const State<D>& a, const State<D>& b) {
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < State<D>::kSize; ++k) {
        num = std::max(num, std::abs(a[k] - b[k]));
        den = std::max(den, std::max(std::abs(a[k]), std::abs(b[k])));
    }
    return den > 0.0 ? num / den : num;
}

template <int D>
double max_abs(const State<D>& a) {
    double m = 0.0;
    for (int k = 0; k < State<D>::kSize; ++k) m = std::max(m, std::abs(a[k]));
    return m;
}

} // namespace testing_support
