#include "pifweno/problems.hpp"

#include <cmath>
#include <numbers>

namespace pifweno {

namespace {

template <int D>
State<D> rest_state(double rho, double energy) {
    State<D> s;
    s[0] = rho;
    s[State<D>::kEnergy] = energy;
    return s;
}

// Wrap x into [lo, lo + len).
double wrap(double x, double lo, double len) {
    double r = std::fmod(x - lo, len);
    if (r < 0.0) r += len;
    return lo + r;
}

} // namespace

State<2> vortex_state(double x, double y, const GasModel& gas, double strength) {
    const double g = gas.gamma;
    const double r2 = x * x + y * y;
    const double pi = std::numbers::pi;
    const double du = strength / (2.0 * pi) * std::exp(0.5 * (1.0 - r2));
    const double dT = -(g - 1.0) * strength * strength / (8.0 * g * pi * pi) * std::exp(1.0 - r2);
    const double T = 1.0 + dT;
    Primitive<2> w;
    w.rho = std::pow(T, 1.0 / (g - 1.0));
    w.u = {1.0 - du * y, 1.0 + du * x};
    w.p = std::pow(T, g / (g - 1.0));
    return to_conserved(w, gas);
}

Field<2> init_vortex(const Grid<2>& grid, const GasModel& gas) { return exact_vortex(0.0, grid, gas); }

Field<2> exact_vortex(double t, const Grid<2>& grid, const GasModel& gas) {
    Field<2> q(grid);
    const double lx = grid.axes[0].hi - grid.axes[0].lo;
    const double ly = grid.axes[1].hi - grid.axes[1].lo;
    const double cx = 0.5 * (grid.axes[0].lo + grid.axes[0].hi);
    const double cy = 0.5 * (grid.axes[1].lo + grid.axes[1].hi);
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            // nearest periodic image of the vortex centre, which sits at (t, t)
            const double x = wrap(grid.axes[0].node(i) - t - cx, -0.5 * lx, lx);
            const double y = wrap(grid.axes[1].node(j) - t - cy, -0.5 * ly, ly);
            q(i, j) = vortex_state(x, y, gas);
        }
    return q;
}

Field<1> init_sedov_1d(const Grid<1>& grid, double energy) {
    const int m = grid.nx();
    Field<1> q(grid, rest_state<1>(1.0, kSedovBackgroundEnergy));
    const double dx = grid.spacing(0);
    if (m % 2 == 1) {
        q(m / 2)[2] = energy / dx;
    } else {
        q(m / 2 - 1)[2] = 0.5 * energy / dx;
        q(m / 2)[2] = 0.5 * energy / dx;
    }
    return q;
}

Field<2> init_sedov_2d(const Grid<2>& grid, double energy) {
    Field<2> q(grid, rest_state<2>(1.0, kSedovBackgroundEnergy));
    q(0, 0)[3] = energy / grid.cell_volume();
    return q;
}

Field<2> init_sedov_2d_full(const Grid<2>& grid, double energy) {
    if (grid.nx() % 2 != 0 || grid.ny() % 2 != 0)
        throw ConfigError("full-domain Sedov needs even cell counts so the origin is a cell corner");
    Field<2> q(grid, rest_state<2>(1.0, kSedovBackgroundEnergy));
    const double e = 0.25 * energy / grid.cell_volume();
    const int ci = grid.nx() / 2;
    const int cj = grid.ny() / 2;
    for (int dj = -1; dj <= 0; ++dj)
        for (int di = -1; di <= 0; ++di) q(ci + di, cj + dj)[3] = e;
    return q;
}

Field<1> init_double_rarefaction(const Grid<1>& grid, const GasModel& gas) {
    Field<1> q(grid);
    const double mid = 0.5 * (grid.axes[0].lo + grid.axes[0].hi);
    for (int i = 0; i < grid.nx(); ++i)
        q(i) = to_conserved(Primitive<1>{7.0, {grid.axes[0].node(i) < mid ? -1.0 : 1.0}, 0.2}, gas);
    return q;
}

template <int D>
State<D> moving_shock_state(double mach, const State<D>& ahead, const GasModel& gas) {
    if (!(mach > 1.0)) throw ConfigError("shock Mach number must exceed 1");
    const double g = gas.gamma;
    const Primitive<D> a = to_primitive(ahead, gas);
    const double c = std::sqrt(g * a.p / a.rho);
    const double m2 = mach * mach;
    const double s = a.u[0] + mach * c;
    Primitive<D> b = a;
    b.rho = a.rho * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    b.p = a.p * (2.0 * g * m2 - (g - 1.0)) / (g + 1.0);
    b.u[0] = s - (s - a.u[0]) * a.rho / b.rho;
    return to_conserved(b, gas);
}

Field<2> init_shock_diffraction(const Domain<2>& domain, const GasModel& gas) {
    const Grid<2>& grid = domain.grid;
    const State<2> ahead = to_conserved(Primitive<2>{1.4, {0.0, 0.0}, 1.0}, gas);
    const State<2> behind = moving_shock_state(kDiffractionMach, ahead, gas);
    Field<2> q(grid, ahead);
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            if (grid.axes[0].node(i) < 0.5) q(i, j) = behind;
    // masked cells get a copy of the ahead state until the ghost fill replaces them
    return q;
}

ProblemDef<2> vortex_problem(int nx, int ny) {
    ProblemDef<2> p;
    p.name = "vortex";
    p.domain.grid = Grid<2>({Axis{-5.0, 5.0, nx}, Axis{-5.0, 5.0, ny}});
    p.domain.bcs = BoundarySet<2>::uniform(BoundaryKind::periodic);
    p.t_final = 0.01;
    p.cfl = 0.35;
    p.init = [](const Domain<2>& d, const GasModel& gas) { return init_vortex(d.grid, gas); };
    p.exact = [](double t, const Domain<2>& d, const GasModel& gas) { return exact_vortex(t, d.grid, gas); };
    return p;
}

ProblemDef<1> sedov1d_problem(int m) {
    ProblemDef<1> p;
    p.name = "sedov1d";
    p.domain.grid = Grid<1>({Axis{-2.0, 2.0, m}});
    p.domain.bcs = BoundarySet<1>::uniform(BoundaryKind::outflow);
    p.t_final = 0.001;
    p.cfl = 0.35;
    p.init = [](const Domain<1>& d, const GasModel&) { return init_sedov_1d(d.grid); };
    p.reference_mesh = std::array<int, 1>{10 * m - 9 * (m % 2)};
    return p;
}

ProblemDef<2> sedov2d_problem(int nx, int ny) {
    ProblemDef<2> p;
    p.name = "sedov2d";
    p.domain.grid = Grid<2>({Axis{0.0, 1.1, nx}, Axis{0.0, 1.1, ny}});
    p.domain.bcs = BoundarySet<2>::uniform(BoundaryKind::outflow);
    p.domain.bcs.side(0, 0).kind = BoundaryKind::wall;
    p.domain.bcs.side(1, 0).kind = BoundaryKind::wall;
    p.t_final = 1.0;
    p.cfl = 0.35;
    p.init = [](const Domain<2>& d, const GasModel&) { return init_sedov_2d(d.grid); };
    return p;
}

ProblemDef<2> sedov2d_full_problem(int nx, int ny) {
    ProblemDef<2> p;
    p.name = "sedov2d_full";
    p.domain.grid = Grid<2>({Axis{-1.1, 1.1, nx}, Axis{-1.1, 1.1, ny}});
    p.domain.bcs = BoundarySet<2>::uniform(BoundaryKind::outflow);
    p.t_final = 1.0;
    p.cfl = 0.35;
    p.init = [](const Domain<2>& d, const GasModel&) { return init_sedov_2d_full(d.grid); };
    return p;
}

ProblemDef<1> double_rarefaction_problem(int m) {
    ProblemDef<1> p;
    p.name = "double_rarefaction";
    p.domain.grid = Grid<1>({Axis{-1.0, 1.0, m}});
    p.domain.bcs = BoundarySet<1>::uniform(BoundaryKind::outflow);
    p.t_final = 0.6;
    p.cfl = 0.15;
    p.init = [](const Domain<1>& d, const GasModel& gas) { return init_double_rarefaction(d.grid, gas); };
    p.reference_mesh = std::array<int, 1>{5 * m};
    return p;
}

ProblemDef<2> shock_diffraction_problem(int nx, int ny) {
    ProblemDef<2> p;
    p.name = "shock_diffraction";
    p.domain.grid = Grid<2>({Axis{0.0, 13.0, nx}, Axis{0.0, 11.0, ny}});
    const GasModel gas;
    const State<2> ahead = to_conserved(Primitive<2>{1.4, {0.0, 0.0}, 1.0}, gas);
    const State<2> behind = moving_shock_state(kDiffractionMach, ahead, gas);
    p.domain.bcs = BoundarySet<2>::uniform(BoundaryKind::outflow);
    p.domain.bcs.side(0, 0).segments.push_back({6.0, 11.0, BoundaryKind::inflow, behind});
    SolidBlock step_block{{0.0, 0.0}, {1.0, 6.0}, {false, true, false, true}};
    p.domain.mask = make_mask(p.domain.grid, {step_block});
    p.t_final = 2.3;
    p.cfl = 0.35;
    p.init = [](const Domain<2>& d, const GasModel& g) { return init_shock_diffraction(d, g); };
    return p;
}

std::vector<std::string> problem_names() {
    return {"vortex", "sedov1d", "sedov2d", "sedov2d_full", "double_rarefaction", "shock_diffraction"};
}

AnyProblem make_problem(const std::string& name, const std::vector<int>& mesh) {
    auto dims = [&](int expected, std::array<int, 2> fallback) {
        if (mesh.empty()) return fallback;
        if (static_cast<int>(mesh.size()) != expected)
            throw ConfigError("problem '" + name + "' needs " + std::to_string(expected) + " mesh entries");
        for (int v : mesh)
            if (v < 1) throw ConfigError("mesh cell counts must be positive");
        return std::array<int, 2>{mesh[0], expected == 2 ? mesh[1] : 1};
    };
    if (name == "vortex") {
        auto m = dims(2, {80, 80});
        return vortex_problem(m[0], m[1]);
    }
    if (name == "sedov1d") return sedov1d_problem(dims(1, {801, 1})[0]);
    if (name == "sedov2d") {
        auto m = dims(2, {160, 160});
        return sedov2d_problem(m[0], m[1]);
    }
    if (name == "sedov2d_full") {
        auto m = dims(2, {320, 320});
        return sedov2d_full_problem(m[0], m[1]);
    }
    if (name == "double_rarefaction") return double_rarefaction_problem(dims(1, {400, 1})[0]);
    if (name == "shock_diffraction") {
        auto m = dims(2, {390, 330});
        return shock_diffraction_problem(m[0], m[1]);
    }
    throw ConfigError("unknown problem '" + name + "'");
}

template State<1> moving_shock_state<1>(double, const State<1>&, const GasModel&);
template State<2> moving_shock_state<2>(double, const State<2>&, const GasModel&);

} // namespace pifweno
