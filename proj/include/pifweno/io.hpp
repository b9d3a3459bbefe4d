#pragma once

// Text formats shared with the plotting tools, and the run configuration.
//
// Snapshot (CSV):
//   # problem=<name>
//   # t=<time>
//   # mesh=<nx>[x<ny>]
//   # gamma=<gamma>
//   # columns=x[,y],rho,mx[,my],E,p
//   one row per interior cell, x index fastest; masked cells carry nan
//   state columns. Numbers are printed with 17 significant digits so a read
//   gives back the same doubles.
//
// Diagnostics (CSV): step,t,dt,min_rho,min_p,min_theta,limited_faces,repaired_faces,
//   total_rho,total_mx[,total_my],total_E
//
// Convergence (CSV): mesh,l1_error,l1_order,linf_error,linf_order

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pifweno/field.hpp"
#include "pifweno/solver.hpp"

namespace pifweno {

struct RunConfig {
    std::string problem;
    std::vector<int> mesh;                // empty: problem default
    std::optional<double> cfl;            // empty: problem default
    std::optional<double> t_final;        // empty: problem default
    bool limiter = true;
    double gamma = 1.4;
    WenoParams weno{};
    std::string output_dir = "output";
    std::vector<double> snapshot_times;   // the final time is always written
    std::vector<std::vector<int>> convergence_meshes;
    double max_wall_seconds = std::numeric_limits<double>::infinity();
    bool write_diagnostics = true;
};

/// Documented config keys, in the order they are listed in the docs.
const std::vector<std::string>& config_keys();

/// Parse "80x80" / "801" style mesh strings.
std::vector<int> parse_mesh(const std::string& text);
std::string mesh_to_string(const std::vector<int>& mesh);

RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

template <int D>
std::vector<std::string> snapshot_columns();

template <int D>
void write_snapshot(std::ostream& out, const Field<D>& q, const Domain<D>& domain, const std::string& problem,
                    double t, const GasModel& gas);

struct SnapshotData {
    std::string problem;
    double t = 0.0;
    std::vector<int> mesh;
    double gamma = 1.4;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Parse a snapshot. Throws ConfigError when the header is incomplete, the
/// column count is off, or the row count disagrees with the mesh.
SnapshotData read_snapshot(std::istream& in);

/// Interior states from a snapshot, laid out on `grid` (ghosts left default).
template <int D>
Field<D> snapshot_field(const SnapshotData& data, const Grid<D>& grid);

template <int D>
void write_diagnostics_header(std::ostream& out);
template <int D>
void write_diagnostics_row(std::ostream& out, const StepDiagnostics<D>& d);

struct ErrorNorms {
    double l1 = 0.0;          // domain average of |diff|
    double l1_integral = 0.0; // cell volume * sum |diff|
    double linf = 0.0;
};

/// Density errors over active interior cells. The convergence tables report
/// the domain-averaged L1 norm.
template <int D>
ErrorNorms density_errors(const Field<D>& numeric, const Field<D>& exact, const Domain<D>& domain);

struct ConvergenceRow {
    std::vector<int> mesh;
    ErrorNorms errors;
    std::optional<double> l1_order;    // relative to the previous row
    std::optional<double> linf_order;
    bool order_undefined = false;      // previous row had the same mesh
};

/// order = log(e_coarse / e_fine) / log(n_fine / n_coarse), using the x cell
/// counts. Fills the order fields of rows[1..].
void fill_orders(std::vector<ConvergenceRow>& rows);

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows);

/// Machine-readable record of a failed run.
std::string failure_json(const FailureRecord& f, const std::string& problem);

struct RunSummary {
    std::string problem;
    std::string status;
    std::vector<int> mesh;
    double t_final = 0.0;
    double t_reached = 0.0;
    int steps = 0;
    double min_rho = 0.0;
    double min_p = 0.0;
    double min_theta = 1.0;
    double wall_seconds = 0.0;
    bool limiter = true;
    double cfl = 0.0;
};

std::string summary_json(const RunSummary& s);

} // namespace pifweno
