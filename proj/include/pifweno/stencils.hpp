#pragma once

// Fixed finite-difference operators used to build the time-averaged fluxes.
// They work on any value type closed under addition and scalar
// multiplication (double, State<D>). Only central stencils exist; boundaries
// are handled entirely through ghost cells.

#include <array>

namespace pifweno::stencils {

/// Five consecutive samples u_{i-2} .. u_{i+2}.
template <class T>
using Five = std::array<T, 5>;

/// Fourth-order first derivative; exact for polynomials of degree <= 4.
template <class T>
T d1_central4(const Five<T>& u, double dx) {
    const double s = 1.0 / (12.0 * dx);
    return s * ((u[0] - u[4]) + 8.0 * (u[3] - u[1]));
}

/// Fourth-order second derivative; exact for polynomials of degree <= 5.
template <class T>
T d2_central4(const Five<T>& u, double dx) {
    const double s = 1.0 / (12.0 * dx * dx);
    return s * (16.0 * (u[1] + u[3]) - (u[0] + u[4]) - 30.0 * u[2]);
}

/// Corner samples for the compact mixed derivative.
template <class T>
struct Corners {
    T mm; // (i-1, j-1)
    T pm; // (i+1, j-1)
    T mp; // (i-1, j+1)
    T pp; // (i+1, j+1)
};

/// Second-order mixed derivative u_xy; exact for bilinear functions.
template <class T>
T dxy_central2(const Corners<T>& c, double dx, double dy) {
    const double s = 1.0 / (4.0 * dx * dy);
    return s * ((c.pp - c.mp) - (c.pm - c.mm));
}

} // namespace pifweno::stencils
