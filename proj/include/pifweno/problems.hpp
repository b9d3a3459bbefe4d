#pragma once

// Benchmark problems: initial data, boundary setups, final times and the
// reference each one is compared against.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"

namespace pifweno {

template <int D>
struct ProblemDef {
    std::string name;
    Domain<D> domain;
    double t_final = 0.0;
    double cfl = 0.35;
    std::function<Field<D>(const Domain<D>&, const GasModel&)> init;
    // Analytic solution at time t, when one exists.
    std::function<Field<D>(double, const Domain<D>&, const GasModel&)> exact;
    // Otherwise the reference is a self-run of the same problem on this mesh.
    std::optional<std::array<int, D>> reference_mesh;
};

using AnyProblem = std::variant<ProblemDef<1>, ProblemDef<2>>;

std::vector<std::string> problem_names();

/// Look up a problem by name. `mesh`, when given, overrides the default cell
/// counts (one entry per dimension). Throws ConfigError on unknown names.
AnyProblem make_problem(const std::string& name, const std::vector<int>& mesh = {});

// Isentropic vortex on [-5, 5]^2 advected by (1, 1).
inline constexpr double kVortexStrength = 10.0828;

State<2> vortex_state(double x, double y, const GasModel& gas, double strength = kVortexStrength);
Field<2> init_vortex(const Grid<2>& grid, const GasModel& gas);
Field<2> exact_vortex(double t, const Grid<2>& grid, const GasModel& gas);

// Sedov blast: `energy` is the deposited quantity; the centre (or corner)
// cell receives energy / cell volume, every other cell 1e-12.
inline constexpr double kSedovEnergy1d = 3200000.0;
inline constexpr double kSedovEnergyQuadrant = 0.244816;
inline constexpr double kSedovEnergyFull = 0.979264;
inline constexpr double kSedovBackgroundEnergy = 1e-12;

Field<1> init_sedov_1d(const Grid<1>& grid, double energy = kSedovEnergy1d);
Field<2> init_sedov_2d(const Grid<2>& grid, double energy = kSedovEnergyQuadrant);
Field<2> init_sedov_2d_full(const Grid<2>& grid, double energy = kSedovEnergyFull);

Field<1> init_double_rarefaction(const Grid<1>& grid, const GasModel& gas);

/// State behind a shock of Mach number `mach` moving in +x into `ahead`.
/// Throws ConfigError for mach <= 1.
template <int D>
State<D> moving_shock_state(double mach, const State<D>& ahead, const GasModel& gas);

inline constexpr double kDiffractionMach = 5.09;

Field<2> init_shock_diffraction(const Domain<2>& domain, const GasModel& gas);

// Domain builders used by the registry, exposed for tests.
ProblemDef<2> vortex_problem(int nx, int ny);
ProblemDef<1> sedov1d_problem(int m);
ProblemDef<2> sedov2d_problem(int nx, int ny);
ProblemDef<2> sedov2d_full_problem(int nx, int ny);
ProblemDef<1> double_rarefaction_problem(int m);
ProblemDef<2> shock_diffraction_problem(int nx, int ny);

} // namespace pifweno
