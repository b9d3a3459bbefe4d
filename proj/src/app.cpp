#include "pifweno/app.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "pifweno/problems.hpp"

namespace pifweno {

namespace fs = std::filesystem;

namespace {

std::string time_tag(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", t);
    return buf;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot write '" + p.string() + "'");
    return out;
}

SolverOptions solver_options(const RunConfig& cfg, double problem_cfl) {
    SolverOptions opt;
    opt.weno = cfg.weno;
    opt.limiter = cfg.limiter;
    opt.cfl = cfg.cfl.value_or(problem_cfl);
    opt.validate();
    return opt;
}

template <int D>
int run_one(const RunConfig& cfg, ProblemDef<D> prob, std::ostream& log) {
    const GasModel gas(cfg.gamma);
    const SolverOptions opt = solver_options(cfg, prob.cfl);
    const double t_final = cfg.t_final.value_or(prob.t_final);
    if (!(t_final >= 0.0)) throw ConfigError("t_final must be non-negative");
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);

    std::ofstream diag;
    if (cfg.write_diagnostics) {
        diag = open_out(dir / "diagnostics.csv");
        write_diagnostics_header<D>(diag);
    }

    AdvanceControl<D> ctl;
    ctl.t_final = t_final;
    for (double t : cfg.snapshot_times)
        if (t < t_final) ctl.snapshot_times.push_back(t);
    ctl.max_wall_seconds = cfg.max_wall_seconds;
    if (cfg.write_diagnostics) ctl.on_step = [&](const StepDiagnostics<D>& d) { write_diagnostics_row(diag, d); };

    Field<D> q0 = prob.init(prob.domain, gas);
    log << "running " << prob.name << " on " << prob.domain.grid.mesh_string() << " to t=" << t_final
        << (opt.limiter ? "" : " (limiter off)") << '\n';
    RunResult<D> res = advance(std::move(q0), prob.domain, gas, opt, ctl);

    for (const auto& [t, q] : res.snapshots) {
        std::ofstream s = open_out(dir / ("snapshot_t" + time_tag(t) + ".csv"));
        write_snapshot(s, q, prob.domain, prob.name, t, gas);
    }
    {
        std::ofstream s = open_out(dir / ("snapshot_t" + time_tag(res.t) + ".csv"));
        write_snapshot(s, res.q, prob.domain, prob.name, res.t, gas);
    }

    RunSummary sum;
    sum.problem = prob.name;
    sum.status = to_string(res.status);
    for (int a = 0; a < D; ++a) sum.mesh.push_back(prob.domain.grid.cells(a));
    sum.t_final = t_final;
    sum.t_reached = res.t;
    sum.steps = static_cast<int>(res.history.size());
    sum.min_rho = std::numeric_limits<double>::infinity();
    sum.min_p = std::numeric_limits<double>::infinity();
    for (const auto& h : res.history) {
        sum.min_rho = std::min(sum.min_rho, h.min_rho);
        sum.min_p = std::min(sum.min_p, h.min_p);
        sum.min_theta = std::min(sum.min_theta, h.min_theta);
    }
    sum.wall_seconds = res.wall_seconds;
    sum.limiter = opt.limiter;
    sum.cfl = opt.cfl;
    open_out(dir / "summary.json") << summary_json(sum);

    log << to_string(res.status) << " after " << sum.steps << " steps, t=" << res.t << '\n';
    if (res.status == RunStatus::failed) {
        open_out(dir / "failure.json") << failure_json(*res.failure, prob.name);
        log << "first inadmissible cell (" << res.failure->i << ", " << res.failure->j << ") at step "
            << res.failure->step << '\n';
        return kExitSolverFailure;
    }
    if (res.status == RunStatus::aborted) return kExitSolverFailure;
    return kExitOk;
}

template <int D>
ConvergenceRow convergence_case(const RunConfig& cfg, ProblemDef<D> prob, const fs::path& dir, std::ostream& log) {
    if (!prob.exact) throw ConfigError("problem '" + prob.name + "' has no analytic solution");
    const GasModel gas(cfg.gamma);
    const SolverOptions opt = solver_options(cfg, prob.cfl);
    AdvanceControl<D> ctl;
    ctl.t_final = cfg.t_final.value_or(prob.t_final);
    ctl.max_wall_seconds = cfg.max_wall_seconds;
    RunResult<D> res = advance(prob.init(prob.domain, gas), prob.domain, gas, opt, ctl);
    if (res.status != RunStatus::completed)
        throw InvalidStateError("convergence case " + prob.domain.grid.mesh_string() + " did not complete");
    const Field<D> exact = prob.exact(res.t, prob.domain, gas);
    ConvergenceRow row;
    for (int a = 0; a < D; ++a) row.mesh.push_back(prob.domain.grid.cells(a));
    row.errors = density_errors(res.q, exact, prob.domain);
    std::ofstream s = open_out(dir / ("final_" + prob.domain.grid.mesh_string() + ".csv"));
    write_snapshot(s, res.q, prob.domain, prob.name, res.t, gas);
    log << prob.domain.grid.mesh_string() << ": L1 " << row.errors.l1 << ", Linf " << row.errors.linf << '\n';
    return row;
}

} // namespace

void apply_overrides(RunConfig& cfg, const CliOverrides& o) {
    if (o.output_dir) cfg.output_dir = *o.output_dir;
    if (o.mesh) cfg.mesh = *o.mesh;
    if (o.cfl) cfg.cfl = *o.cfl;
    if (o.no_limiter) cfg.limiter = false;
}

int run_simulation(const RunConfig& cfg, std::ostream& log) {
    AnyProblem p = make_problem(cfg.problem, cfg.mesh);
    return std::visit([&](auto& prob) { return run_one(cfg, prob, log); }, p);
}

int run_convergence(const RunConfig& cfg, std::ostream& log) {
    if (cfg.convergence_meshes.empty()) throw ConfigError("convergence needs 'convergence_meshes'");
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    std::vector<ConvergenceRow> rows;
    for (const auto& mesh : cfg.convergence_meshes) {
        AnyProblem p = make_problem(cfg.problem, mesh);
        rows.push_back(std::visit([&](auto& prob) { return convergence_case(cfg, prob, dir, log); }, p));
    }
    fill_orders(rows);
    std::ofstream out = open_out(dir / "convergence.csv");
    write_convergence_table(out, rows);
    return kExitOk;
}

} // namespace pifweno
