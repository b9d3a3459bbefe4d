#pragma once

// Time stepping: ghost fill, CFL step size, and the single-stage update
//   q^{n+1} = q^n - lambda_x (F~_{i+1/2} - F~_{i-1/2}) - lambda_y (G~_{j+1/2} - G~_{j-1/2})
// built from the Taylor time-averaged fluxes, WENO interface fluxes, and the
// positivity limiter blending toward Lax-Friedrichs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pifweno/euler.hpp"
#include "pifweno/field.hpp"
#include "pifweno/weno.hpp"

namespace pifweno {

struct SolverOptions {
    WenoParams weno{};
    bool limiter = true;
    double cfl = 0.35;

    void validate() const;
};

/// Populate every ghost cell (and every masked cell) from the interior.
template <int D>
void fill_ghosts(Field<D>& q, const Domain<D>& domain, double t = 0.0);

/// dt = cfl * dx / alpha (1D) or cfl / (alpha/dx + alpha/dy) (2D), clipped so
/// that t + dt does not pass t_end.
template <int D>
double compute_dt(const Field<D>& q, const Domain<D>& domain, double cfl, const GasModel& gas,
                  double remaining = std::numeric_limits<double>::infinity());

template <int D>
struct StepDiagnostics {
    int step = 0;
    double t = 0.0;   // time after the step
    double dt = 0.0;
    double alpha = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
    double min_theta = 1.0;
    std::size_t limited_faces = 0;
    std::size_t repaired_faces = 0; // faces reset to low order after a rounding miss
    double eps_rho = 0.0;
    double eps_p = 0.0;
    State<D> totals{};
    StepCounters counters{};
};

struct FailureRecord {
    int step = 0;
    double t = 0.0;
    int i = 0;
    int j = 0;
    double rho = 0.0;
    double p = 0.0;
    std::string message;
};

template <int D>
struct StepOutcome {
    Field<D> q;
    StepDiagnostics<D> diag;
    std::optional<FailureRecord> failure;
};

/// q - lambda_x (F_{i+1/2} - F_{i-1/2}) [- lambda_y (...)] over active cells.
/// q must be ghost-filled; inactive and ghost cells are copied.
template <int D>
Field<D> conservative_update(const Field<D>& q, const std::array<FaceArray<D>, D>& faces, double dt,
                             const Domain<D>& domain);

template <int D>
struct LimitedUpdate {
    Field<D> q;
    std::array<FaceArray<D>, D> faces; // blended fluxes actually applied
    double min_theta = 1.0;
    std::size_t limited_faces = 0;
    std::size_t repaired_faces = 0;
    double eps_rho = 0.0;
    double eps_p = 0.0;
};

/// Low-order pass, limiter pass and the update with blended fluxes. Cells
/// that still land below a floor through rounding get low-order fluxes on
/// their faces. q must be ghost-filled.
template <int D>
LimitedUpdate<D> limited_update(const Field<D>& q, std::array<FaceArray<D>, D> high, double dt, double alpha,
                                const Domain<D>& domain, const GasModel& gas, StepCounters* counters = nullptr);

/// One full step of size dt from time t. With the limiter enabled an
/// inadmissible result throws InternalInvariantError; with it disabled the
/// outcome carries a FailureRecord instead.
template <int D>
StepOutcome<D> step(const Field<D>& qn, const Domain<D>& domain, const GasModel& gas, const SolverOptions& options,
                    double dt, double t = 0.0, int step_index = 0);

/// Conserved totals (cell-volume weighted sums) over active interior cells.
template <int D>
State<D> conserved_totals(const Field<D>& q, const Domain<D>& domain);

enum class RunStatus { completed, failed, aborted };

std::string to_string(RunStatus s);

template <int D>
struct AdvanceControl {
    double t_final = 0.0;
    std::vector<double> snapshot_times;
    double max_wall_seconds = std::numeric_limits<double>::infinity();
    std::function<void(const StepDiagnostics<D>&)> on_step;
};

template <int D>
struct RunResult {
    Field<D> q;
    double t = 0.0;
    RunStatus status = RunStatus::completed;
    std::optional<FailureRecord> failure;
    std::vector<StepDiagnostics<D>> history;
    std::vector<std::pair<double, Field<D>>> snapshots;
    double wall_seconds = 0.0;
};

/// Step from t = 0 to control.t_final. Snapshot times are hit exactly by
/// clipping the step that would cross them.
template <int D>
RunResult<D> advance(Field<D> q0, const Domain<D>& domain, const GasModel& gas, const SolverOptions& options,
                     const AdvanceControl<D>& control);

} // namespace pifweno
