#include <doctest.h>

#include <cmath>
#include <functional>

#include "pifweno/stencils.hpp"
#include "properties.hpp"

using namespace pifweno::stencils;

namespace {

double poly(const std::vector<double>& c, double x) {
    double s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
}

double dpoly(const std::vector<double>& c, double x, int order) {
    std::vector<double> d = c;
    for (int o = 0; o < order; ++o) {
        std::vector<double> n;
        for (std::size_t k = 1; k < d.size(); ++k) n.push_back(static_cast<double>(k) * d[k]);
        d = n;
    }
    return poly(d, x);
}

Five<double> samples(const std::function<double(double)>& f, double x, double h) {
    return {f(x - 2 * h), f(x - h), f(x), f(x + h), f(x + 2 * h)};
}

} // namespace

TEST_CASE("first and second derivatives are exact on low-degree polynomials") {
    const double x0 = 0.3;
    const double h = 0.1;
    for (int degree = 0; degree <= 5; ++degree) {
        std::vector<double> c;
        for (int k = 0; k <= degree; ++k) c.push_back(1.0 + 0.5 * k - 0.1 * k * k);
        const auto u = samples([&](double x) { return poly(c, x); }, x0, h);
        if (degree <= 4) CHECK(d1_central4(u, h) == doctest::Approx(dpoly(c, x0, 1)).epsilon(1e-12));
        CHECK(d2_central4(u, h) == doctest::Approx(dpoly(c, x0, 2)).epsilon(1e-11));
    }
}

TEST_CASE("first derivative is not exact at degree 5") {
    const std::vector<double> c{0, 0, 0, 0, 0, 1};
    const auto u = samples([&](double x) { return poly(c, x); }, 0.3, 0.1);
    CHECK(std::abs(d1_central4(u, 0.1) - dpoly(c, 0.3, 1)) > 1e-6);
}

TEST_CASE("mixed derivative is exact on x^a y^b with a, b <= 2") {
    const double x0 = 0.2, y0 = -0.4, dx = 0.05, dy = 0.08;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            auto f = [&](double x, double y) { return std::pow(x, a) * std::pow(y, b); };
            const Corners<double> c{f(x0 - dx, y0 - dy), f(x0 + dx, y0 - dy), f(x0 - dx, y0 + dy), f(x0 + dx, y0 + dy)};
            const double exact = (a == 0 || b == 0) ? 0.0 : a * std::pow(x0, a - 1) * b * std::pow(y0, b - 1);
            CHECK(dxy_central2(c, dx, dy) == doctest::Approx(exact).epsilon(1e-12).scale(1.0));
        }
}

TEST_CASE("truncation error orders on a smooth function") {
    auto f = [](double x) { return std::sin(2.0 * x) + std::exp(0.3 * x); };
    auto f1 = [](double x) { return 2.0 * std::cos(2.0 * x) + 0.3 * std::exp(0.3 * x); };
    auto f2 = [](double x) { return -4.0 * std::sin(2.0 * x) + 0.09 * std::exp(0.3 * x); };
    const double x0 = 0.7;
    double e1_prev = 0.0, e2_prev = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double h = 0.1 / std::pow(2.0, k);
        const auto u = samples(f, x0, h);
        const double e1 = std::abs(d1_central4(u, h) - f1(x0));
        const double e2 = std::abs(d2_central4(u, h) - f2(x0));
        if (k > 0) {
            CHECK(std::log2(e1_prev / e1) > 3.8);
            CHECK(std::log2(e2_prev / e2) > 3.8);
        }
        e1_prev = e1;
        e2_prev = e2;
    }
    // mixed derivative: second order
    auto g = [](double x, double y) { return std::sin(x + 2.0 * y); };
    const double exact = -2.0 * std::sin(0.3 + 2.0 * 0.1);
    double prev = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double h = 0.1 / std::pow(2.0, k);
        const Corners<double> c{g(0.3 - h, 0.1 - h), g(0.3 + h, 0.1 - h), g(0.3 - h, 0.1 + h), g(0.3 + h, 0.1 + h)};
        const double e = std::abs(dxy_central2(c, h, h) - exact);
        if (k > 0) CHECK(std::log2(prev / e) > 1.9);
        prev = e;
    }
}

TEST_CASE("combined exactness check") { CHECK(testing_support::stencil_exactness_error() < 1e-11); }
