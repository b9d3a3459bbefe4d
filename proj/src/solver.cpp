#include "pifweno/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pifweno/limiter.hpp"
#include "pifweno/low_order.hpp"
#include "pifweno/pif_taylor.hpp"

namespace pifweno {

std::string to_string(RunStatus s) {
    switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::failed: return "failed";
    case RunStatus::aborted: return "aborted";
    }
    return "unknown";
}

void SolverOptions::validate() const {
    weno.validate();
    if (!(cfl > 0.0 && cfl <= 0.5)) throw ConfigError("CFL number must lie in (0, 0.5]");
}

namespace {

template <int D>
const BoundarySegment<D>* find_segment(const SideBoundary<D>& side, double coord) {
    for (const auto& s : side.segments)
        if (coord >= s.lo && coord <= s.hi) return &s;
    return nullptr;
}

template <int D>
void check_periodic_pairs(const BoundarySet<D>& bcs) {
    for (int a = 0; a < D; ++a) {
        const bool lo = bcs.side(a, 0).kind == BoundaryKind::periodic;
        const bool hi = bcs.side(a, 1).kind == BoundaryKind::periodic;
        if (lo != hi) throw ConfigError("periodic boundary on axis " + std::to_string(a) + " is not paired");
    }
}

// Fill ghost cells of one side of `axis`. `line` is the tangential index; the
// accessor maps (normal index, line) to a field reference.
template <int D, class Access>
void fill_side(Access&& at, const SideBoundary<D>& side, int hi, int n, int ghost, int axis, double tangential) {
    BoundaryKind kind = side.kind;
    State<D> inflow = side.inflow_state;
    if (const auto* seg = find_segment(side, tangential)) {
        kind = seg->kind;
        inflow = seg->state;
    }
    for (int k = 0; k < ghost; ++k) {
        const int g = hi ? n + k : -1 - k;
        switch (kind) {
        case BoundaryKind::periodic: at(g) = at(hi ? k : n - 1 - k); break;
        case BoundaryKind::outflow: at(g) = at(hi ? n - 1 : 0); break;
        case BoundaryKind::wall: {
            State<D> s = at(hi ? n - 1 - k : k);
            s[1 + axis] = -s[1 + axis];
            at(g) = s;
            break;
        }
        case BoundaryKind::inflow: at(g) = inflow; break;
        }
    }
}

void fill_masked(Field<2>& q, const Domain<2>& domain) {
    const Grid<2>& grid = domain.grid;
    const MaskedDomain& mask = *domain.mask;
    const int nx = grid.nx();
    const int ny = grid.ny();
    for (const SolidBlock& b : mask.blocks) {
        // Wall faces as grid-line indices: face f lies between cells f-1 and f.
        std::array<int, 4> face{};
        for (int a = 0; a < 2; ++a) {
            face[2 * a] = static_cast<int>(std::lround((b.lo[a] - grid.axes[a].lo) / grid.spacing(a)));
            face[2 * a + 1] = static_cast<int>(std::lround((b.hi[a] - grid.axes[a].lo) / grid.spacing(a)));
        }
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                if (domain.is_active(i, j)) continue;
                const int idx[2] = {i, j};
                int best = std::numeric_limits<int>::max();
                std::array<bool, 4> use{};
                for (int f = 0; f < 4; ++f) {
                    if (!b.wall_faces[f]) continue;
                    const int a = f / 2;
                    const int dist = (f % 2 == 1) ? face[f] - idx[a] : idx[a] - face[f] + 1;
                    if (dist < 1) continue;
                    if (dist < best) {
                        best = dist;
                        use = {};
                    }
                    if (dist == best) use[f] = true;
                }
                if (best == std::numeric_limits<int>::max()) continue;
                int src[2] = {i, j};
                std::array<bool, 2> flip{};
                for (int f = 0; f < 4; ++f) {
                    if (!use[f]) continue;
                    const int a = f / 2;
                    src[a] = (f % 2 == 1) ? 2 * face[f] - 1 - idx[a] : 2 * face[f] - 1 - idx[a];
                    flip[a] = true;
                }
                src[0] = std::clamp(src[0], 0, nx - 1);
                src[1] = std::clamp(src[1], 0, ny - 1);
                State<2> s = q(src[0], src[1]);
                for (int a = 0; a < 2; ++a)
                    if (flip[a]) s[1 + a] = -s[1 + a];
                q(i, j) = s;
            }
    }
}

template <int D>
double pressure_or_neg_inf(const State<D>& s, const GasModel& gas) {
    return s[0] > 0.0 ? pressure(s, gas) : -std::numeric_limits<double>::infinity();
}

struct InadmissibleCell {
    int i = 0;
    int j = 0;
    double rho = 0.0;
    double p = 0.0;
};

} // namespace

template <int D>
void fill_ghosts(Field<D>& q, const Domain<D>& domain, double /*t*/) {
    const Grid<D>& grid = q.grid();
    check_periodic_pairs(domain.bcs);
    const int g = grid.ghost;
    const int nx = grid.nx();
    if constexpr (D == 2) {
        if (domain.mask) fill_masked(q, domain);
        const int ny = grid.ny();
        for (int j = 0; j < ny; ++j) {
            const double y = grid.axes[1].node(j);
            for (int hi = 0; hi < 2; ++hi)
                fill_side<2>([&](int i) -> State<2>& { return q(i, j); }, domain.bcs.side(0, hi), hi, nx, g, 0, y);
        }
        for (int i = -g; i < nx + g; ++i) {
            const double x = grid.axes[0].node(i);
            for (int hi = 0; hi < 2; ++hi)
                fill_side<2>([&](int j) -> State<2>& { return q(i, j); }, domain.bcs.side(1, hi), hi, ny, g, 1, x);
        }
    } else {
        for (int hi = 0; hi < 2; ++hi)
            fill_side<1>([&](int i) -> State<1>& { return q(i); }, domain.bcs.side(0, hi), hi, nx, g, 0, 0.0);
    }
}

template <int D>
double compute_dt(const Field<D>& q, const Domain<D>& domain, double cfl, const GasModel& gas, double remaining) {
    const double alpha = global_alpha(q, gas, domain.mask ? &*domain.mask : nullptr);
    if (!(alpha > 0.0)) throw InvalidStateError("compute_dt: degenerate field with zero wave speed");
    double rate = 0.0;
    for (int a = 0; a < D; ++a) rate += alpha / domain.grid.spacing(a);
    return std::min(cfl / rate, remaining);
}

template <int D>
State<D> conserved_totals(const Field<D>& q, const Domain<D>& domain) {
    State<D> tot;
    for (int j = 0; j < domain.grid.ny(); ++j)
        for (int i = 0; i < domain.grid.nx(); ++i)
            if (domain.is_active(i, j)) tot += q(i, j);
    return domain.grid.cell_volume() * tot;
}

namespace {

template <int D>
State<D> cell_update(const Field<D>& q, const std::array<FaceArray<D>, D>& faces, const std::array<double, D>& lambda,
                     int i, int j) {
    State<D> s = q(i, j);
    s -= lambda[0] * (faces[0](i + 1, j) - faces[0](i, j));
    if constexpr (D == 2) s -= lambda[1] * (faces[1](i, j + 1) - faces[1](i, j));
    return s;
}

template <int D>
std::array<double, D> ratios(const Grid<D>& grid, double dt) {
    std::array<double, D> lambda;
    for (int a = 0; a < D; ++a) lambda[a] = dt / grid.spacing(a);
    return lambda;
}

} // namespace

template <int D>
Field<D> conservative_update(const Field<D>& q, const std::array<FaceArray<D>, D>& faces, double dt,
                             const Domain<D>& domain) {
    const Grid<D>& grid = domain.grid;
    const auto lambda = ratios<D>(grid, dt);
    Field<D> out = q;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            if (domain.is_active(i, j)) out(i, j) = cell_update<D>(q, faces, lambda, i, j);
    return out;
}

template <int D>
LimitedUpdate<D> limited_update(const Field<D>& q, std::array<FaceArray<D>, D> high, double dt, double alpha,
                                const Domain<D>& domain, const GasModel& gas, StepCounters* counters) {
    const Grid<D>& grid = domain.grid;
    const MaskedDomain* mask = domain.mask ? &*domain.mask : nullptr;
    LimitedUpdate<D> out;
    const LowOrderUpdate<D> low = low_order_update(q, dt, alpha, gas, mask, counters);
    const LimiterOutput<D> lim = compute_limiter<D>(high, low, dt, domain, gas, counters);
    std::array<FaceArray<D>, D>& faces = high;
    for (int a = 0; a < D; ++a) {
        auto& f = faces[a].raw();
        const auto& lo = low.flux[a].raw();
        const auto& th = lim.theta[a].raw();
        for (std::size_t k = 0; k < f.size(); ++k) f[k] = limited_flux(f[k], lo[k], th[k]);
    }
    out.min_theta = lim.min_theta;
    out.limited_faces = lim.limited_faces;
    out.eps_rho = low.eps_rho;
    out.eps_p = low.eps_p;
    out.q = conservative_update<D>(q, faces, dt, domain);

    // The box bounds hold in exact arithmetic. Where the flux-form update
    // still misses a floor through rounding, fall back to the low-order
    // fluxes on that cell's faces; with every face low order the update
    // reproduces q_hat exactly, so this terminates.
    const auto lambda = ratios<D>(grid, dt);
    auto below = [&](const State<D>& s) {
        return !(s[0] >= low.eps_rho) || !(pressure_or_neg_inf(s, gas) >= low.eps_p);
    };
    std::vector<std::array<int, 2>> pending;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i)
            if (domain.is_active(i, j) && below(out.q(i, j))) pending.push_back({i, j});
    while (!pending.empty()) {
        std::vector<std::array<int, 2>> touched;
        for (const auto& [i, j] : pending)
            for (int a = 0; a < D; ++a)
                for (int side = 0; side < 2; ++side) {
                    const int fi = i + (a == 0 ? side : 0);
                    const int fj = j + (a == 1 ? side : 0);
                    if (faces[a](fi, fj) == low.flux[a](fi, fj)) continue;
                    faces[a](fi, fj) = low.flux[a](fi, fj);
                    // periodic: the first and last faces are the same face
                    const int n = grid.cells(a);
                    const int f_along = a == 0 ? fi : fj;
                    if (domain.bcs.periodic(a) && (f_along == 0 || f_along == n)) {
                        const int shift = f_along == 0 ? n : -n;
                        const int gi = fi + (a == 0 ? shift : 0);
                        const int gj = fj + (a == 1 ? shift : 0);
                        faces[a](gi, gj) = low.flux[a](gi, gj);
                    }
                    ++out.repaired_faces;
                    out.min_theta = 0.0;
                    const int step_out = side == 1 ? 1 : -1;
                    touched.push_back({i, j});
                    touched.push_back({i + (a == 0 ? step_out : 0), j + (a == 1 ? step_out : 0)});
                }
        pending.clear();
        for (auto [i, j] : touched) {
            if (domain.bcs.periodic(0)) i = (i + grid.nx()) % grid.nx();
            if constexpr (D == 2)
                if (domain.bcs.periodic(1)) j = (j + grid.ny()) % grid.ny();
            if (i < 0 || i >= grid.nx() || j < 0 || j >= grid.ny() || !domain.is_active(i, j)) continue;
            out.q(i, j) = cell_update<D>(q, faces, lambda, i, j);
            if (below(out.q(i, j))) pending.push_back({i, j});
        }
        std::sort(pending.begin(), pending.end());
        pending.erase(std::unique(pending.begin(), pending.end()), pending.end());
    }
    out.faces = std::move(faces);
    return out;
}

template <int D>
StepOutcome<D> step(const Field<D>& qn, const Domain<D>& domain, const GasModel& gas, const SolverOptions& options,
                    double dt, double t, int step_index) {
    const Grid<D>& grid = domain.grid;
    const MaskedDomain* mask = domain.mask ? &*domain.mask : nullptr;
    StepOutcome<D> out;
    StepDiagnostics<D>& diag = out.diag;
    diag.step = step_index;
    diag.dt = dt;
    diag.t = t + dt;

    Field<D> q = qn;
    fill_ghosts(q, domain, t);
    const double alpha = global_alpha(q, gas, mask);
    diag.alpha = alpha;

    const TimeAveragedFlux<D> avg = time_averaged_flux(q, dt, gas);
    std::array<FaceArray<D>, D> faces;
    for (int a = 0; a < D; ++a) faces[a] = interface_flux(avg, q, a, alpha, options.weno, gas, &diag.counters);

    if (options.limiter) {
        LimitedUpdate<D> lu = limited_update<D>(q, std::move(faces), dt, alpha, domain, gas, &diag.counters);
        out.q = std::move(lu.q);
        diag.min_theta = lu.min_theta;
        diag.limited_faces = lu.limited_faces;
        diag.repaired_faces = lu.repaired_faces;
        diag.eps_rho = lu.eps_rho;
        diag.eps_p = lu.eps_p;
    } else {
        out.q = conservative_update<D>(q, faces, dt, domain);
    }

    double min_rho = std::numeric_limits<double>::infinity();
    double min_p = std::numeric_limits<double>::infinity();
    std::optional<InadmissibleCell> bad;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            if (!domain.is_active(i, j)) continue;
            const State<D>& s = out.q(i, j);
            const double p = pressure_or_neg_inf(s, gas);
            min_rho = std::min(min_rho, s[0]);
            min_p = std::min(min_p, p);
            if (!bad && !(s[0] > 0.0 && p > 0.0)) bad = InadmissibleCell{i, j, s[0], p};
        }
    diag.min_rho = min_rho;
    diag.min_p = min_p;
    diag.totals = conserved_totals(out.q, domain);

    if (bad) {
        FailureRecord rec{step_index, t + dt, bad->i, bad->j, bad->rho, bad->p, "inadmissible state after update"};
        if (options.limiter)
            throw InternalInvariantError("limited update produced an inadmissible state at cell (" +
                                         std::to_string(bad->i) + ", " + std::to_string(bad->j) +
                                         "), step " + std::to_string(step_index));
        out.failure = rec;
    }
    return out;
}

template <int D>
RunResult<D> advance(Field<D> q0, const Domain<D>& domain, const GasModel& gas, const SolverOptions& options,
                     const AdvanceControl<D>& control) {
    options.validate();
    const auto start = std::chrono::steady_clock::now();
    RunResult<D> res;
    res.q = std::move(q0);

    std::vector<double> marks = control.snapshot_times;
    std::sort(marks.begin(), marks.end());
    std::size_t next_mark = 0;
    while (next_mark < marks.size() && marks[next_mark] <= 0.0) {
        res.snapshots.emplace_back(0.0, res.q);
        ++next_mark;
    }

    double t = 0.0;
    int n = 0;
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };
    while (t < control.t_final) {
        if (elapsed() > control.max_wall_seconds) {
            res.status = RunStatus::aborted;
            break;
        }
        double target = control.t_final;
        if (next_mark < marks.size()) target = std::min(target, marks[next_mark]);
        double dt = compute_dt(res.q, domain, options.cfl, gas, target - t);
        const bool lands = dt >= target - t;
        StepOutcome<D> so = step(res.q, domain, gas, options, dt, t, n + 1);
        ++n;
        t = lands ? target : t + dt;
        so.diag.t = t;
        if (control.on_step) control.on_step(so.diag);
        res.history.push_back(so.diag);
        res.q = std::move(so.q);
        if (so.failure) {
            res.status = RunStatus::failed;
            res.failure = so.failure;
            break;
        }
        while (next_mark < marks.size() && marks[next_mark] <= t) {
            res.snapshots.emplace_back(t, res.q);
            ++next_mark;
        }
    }
    res.t = t;
    res.wall_seconds = elapsed();
    return res;
}

template void fill_ghosts<1>(Field<1>&, const Domain<1>&, double);
template void fill_ghosts<2>(Field<2>&, const Domain<2>&, double);
template double compute_dt<1>(const Field<1>&, const Domain<1>&, double, const GasModel&, double);
template double compute_dt<2>(const Field<2>&, const Domain<2>&, double, const GasModel&, double);
template State<1> conserved_totals<1>(const Field<1>&, const Domain<1>&);
template State<2> conserved_totals<2>(const Field<2>&, const Domain<2>&);
template Field<1> conservative_update<1>(const Field<1>&, const std::array<FaceArray<1>, 1>&, double,
                                         const Domain<1>&);
template Field<2> conservative_update<2>(const Field<2>&, const std::array<FaceArray<2>, 2>&, double,
                                         const Domain<2>&);
template LimitedUpdate<1> limited_update<1>(const Field<1>&, std::array<FaceArray<1>, 1>, double, double,
                                            const Domain<1>&, const GasModel&, StepCounters*);
template LimitedUpdate<2> limited_update<2>(const Field<2>&, std::array<FaceArray<2>, 2>, double, double,
                                            const Domain<2>&, const GasModel&, StepCounters*);
template StepOutcome<1> step<1>(const Field<1>&, const Domain<1>&, const GasModel&, const SolverOptions&, double,
                                double, int);
template StepOutcome<2> step<2>(const Field<2>&, const Domain<2>&, const GasModel&, const SolverOptions&, double,
                                double, int);
template RunResult<1> advance<1>(Field<1>, const Domain<1>&, const GasModel&, const SolverOptions&,
                                 const AdvanceControl<1>&);
template RunResult<2> advance<2>(Field<2>, const Domain<2>&, const GasModel&, const SolverOptions&,
                                 const AdvanceControl<2>&);

} // namespace pifweno
