#include "pifweno/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pifweno {

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw ConfigError("key '" + key + "': not a number: '" + text + "'");
    return v;
}

int parse_int(const std::string& what, const std::string& text) {
    int v = 0;
    const char* b = text.data();
    const char* e = b + text.size();
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) throw ConfigError(what + ": not an integer: '" + text + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "on" || text == "yes" || text == "1") return true;
    if (text == "false" || text == "off" || text == "no" || text == "0") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + text + "'");
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "problem",      "mesh",         "cfl",            "t_final",           "limiter",
        "gamma",        "weno_power",   "weno_epsilon",   "output_dir",        "snapshot_times",
        "convergence_meshes", "max_wall_seconds", "write_diagnostics"};
    return keys;
}

std::vector<int> parse_mesh(const std::string& text) {
    std::vector<int> out;
    for (const std::string& part : split(text, 'x')) {
        const int v = parse_int("mesh '" + text + "'", part);
        if (v < 1) throw ConfigError("mesh '" + text + "': cell counts must be positive");
        out.push_back(v);
    }
    if (out.empty() || out.size() > 2) throw ConfigError("mesh '" + text + "': expected N or NxM");
    return out;
}

std::string mesh_to_string(const std::vector<int>& mesh) {
    std::string s;
    for (std::size_t k = 0; k < mesh.size(); ++k) s += (k ? "x" : "") + std::to_string(mesh[k]);
    return s;
}

RunConfig parse_config(std::istream& in) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");

        if (key == "problem") cfg.problem = value;
        else if (key == "mesh") cfg.mesh = parse_mesh(value);
        else if (key == "cfl") cfg.cfl = parse_double(key, value);
        else if (key == "t_final") cfg.t_final = parse_double(key, value);
        else if (key == "limiter") cfg.limiter = parse_bool(key, value);
        else if (key == "gamma") cfg.gamma = parse_double(key, value);
        else if (key == "weno_power") cfg.weno.power = parse_double(key, value);
        else if (key == "weno_epsilon") cfg.weno.epsilon = parse_double(key, value);
        else if (key == "output_dir") cfg.output_dir = value;
        else if (key == "snapshot_times") {
            for (const std::string& t : split(value, ','))
                if (!t.empty()) cfg.snapshot_times.push_back(parse_double(key, t));
        } else if (key == "convergence_meshes") {
            for (const std::string& m : split(value, ','))
                if (!m.empty()) cfg.convergence_meshes.push_back(parse_mesh(m));
        } else if (key == "max_wall_seconds") cfg.max_wall_seconds = parse_double(key, value);
        else if (key == "write_diagnostics") cfg.write_diagnostics = parse_bool(key, value);
        else throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (cfg.problem.empty()) throw ConfigError("config is missing 'problem'");
    return cfg;
}

RunConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

template <int D>
std::vector<std::string> snapshot_columns() {
    if constexpr (D == 2) return {"x", "y", "rho", "mx", "my", "E", "p"};
    else return {"x", "rho", "mx", "E", "p"};
}

template <int D>
void write_snapshot(std::ostream& out, const Field<D>& q, const Domain<D>& domain, const std::string& problem,
                    double t, const GasModel& gas) {
    const Grid<D>& grid = domain.grid;
    out << "# problem=" << problem << '\n';
    out << "# t=" << fmt(t) << '\n';
    out << "# mesh=" << grid.mesh_string() << '\n';
    out << "# gamma=" << fmt(gas.gamma) << '\n';
    out << "# columns=";
    const auto cols = snapshot_columns<D>();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << '\n';
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) {
            out << fmt(grid.axes[0].node(i));
            if constexpr (D == 2) out << ',' << fmt(grid.axes[1].node(j));
            const bool active = domain.is_active(i, j);
            const State<D>& s = q(i, j);
            for (int c = 0; c < State<D>::kSize; ++c) out << ',' << fmt(active ? s[c] : nan);
            out << ',' << fmt(active ? pressure(s, gas) : nan) << '\n';
        }
}

SnapshotData read_snapshot(std::istream& in) {
    SnapshotData d;
    std::map<std::string, std::string> header;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const auto eq = body.find('=');
            if (eq != std::string::npos) header[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
            continue;
        }
        std::vector<double> row;
        for (const std::string& cell : split(line, ',')) {
            if (cell == "nan") row.push_back(std::numeric_limits<double>::quiet_NaN());
            else row.push_back(parse_double("snapshot row", cell));
        }
        d.rows.push_back(std::move(row));
    }
    for (const char* key : {"problem", "t", "mesh", "gamma", "columns"})
        if (!header.count(key)) throw ConfigError(std::string("snapshot header is missing '") + key + "'");
    d.problem = header["problem"];
    d.t = parse_double("t", header["t"]);
    d.mesh = parse_mesh(header["mesh"]);
    d.gamma = parse_double("gamma", header["gamma"]);
    d.columns = split(header["columns"], ',');
    std::size_t cells = 1;
    for (int m : d.mesh) cells *= static_cast<std::size_t>(m);
    if (d.rows.size() != cells)
        throw ConfigError("snapshot has " + std::to_string(d.rows.size()) + " rows but mesh " + header["mesh"] +
                          " needs " + std::to_string(cells));
    for (const auto& r : d.rows)
        if (r.size() != d.columns.size()) throw ConfigError("snapshot row has the wrong number of columns");
    return d;
}

template <int D>
Field<D> snapshot_field(const SnapshotData& data, const Grid<D>& grid) {
    if (static_cast<int>(data.mesh.size()) != D || data.mesh[0] != grid.nx() || (D == 2 && data.mesh[D - 1] != grid.ny()))
        throw ConfigError("snapshot mesh does not match the grid");
    Field<D> q(grid);
    std::size_t r = 0;
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i, ++r)
            for (int c = 0; c < State<D>::kSize; ++c) q(i, j)[c] = data.rows[r][D + c];
    return q;
}

template <int D>
void write_diagnostics_header(std::ostream& out) {
    out << "step,t,dt,min_rho,min_p,min_theta,limited_faces,repaired_faces,total_rho,total_mx";
    if constexpr (D == 2) out << ",total_my";
    out << ",total_E\n";
}

template <int D>
void write_diagnostics_row(std::ostream& out, const StepDiagnostics<D>& d) {
    out << d.step << ',' << fmt(d.t) << ',' << fmt(d.dt) << ',' << fmt(d.min_rho) << ',' << fmt(d.min_p) << ','
        << fmt(d.min_theta) << ',' << d.limited_faces << ',' << d.repaired_faces;
    for (int c = 0; c < State<D>::kSize; ++c) out << ',' << fmt(d.totals[c]);
    out << '\n';
}

template <int D>
ErrorNorms density_errors(const Field<D>& numeric, const Field<D>& exact, const Domain<D>& domain) {
    ErrorNorms e;
    double sum = 0.0;
    std::size_t count = 0;
    for (int j = 0; j < domain.grid.ny(); ++j)
        for (int i = 0; i < domain.grid.nx(); ++i) {
            if (!domain.is_active(i, j)) continue;
            const double d = std::abs(numeric(i, j)[0] - exact(i, j)[0]);
            sum += d;
            ++count;
            e.linf = std::max(e.linf, d);
        }
    e.l1_integral = domain.grid.cell_volume() * sum;
    e.l1 = count ? sum / static_cast<double>(count) : 0.0;
    return e;
}

void fill_orders(std::vector<ConvergenceRow>& rows) {
    for (std::size_t k = 1; k < rows.size(); ++k) {
        ConvergenceRow& fine = rows[k];
        const ConvergenceRow& coarse = rows[k - 1];
        fine.l1_order.reset();
        fine.linf_order.reset();
        fine.order_undefined = false;
        if (fine.mesh.empty() || coarse.mesh.empty() || fine.mesh[0] == coarse.mesh[0]) {
            fine.order_undefined = true;
            continue;
        }
        const double ratio = std::log(static_cast<double>(fine.mesh[0]) / coarse.mesh[0]);
        fine.l1_order = std::log(coarse.errors.l1 / fine.errors.l1) / ratio;
        fine.linf_order = std::log(coarse.errors.linf / fine.errors.linf) / ratio;
    }
}

void write_convergence_table(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
    out << "mesh,l1_error,l1_order,linf_error,linf_order\n";
    auto order = [](const ConvergenceRow& r, const std::optional<double>& o) -> std::string {
        if (r.order_undefined) return "undefined";
        return o ? fmt(*o) : std::string();
    };
    for (const ConvergenceRow& r : rows)
        out << mesh_to_string(r.mesh) << ',' << fmt(r.errors.l1) << ',' << order(r, r.l1_order) << ','
            << fmt(r.errors.linf) << ',' << order(r, r.linf_order) << '\n';
}

namespace {

// JSON has no NaN/inf; write them as null.
nlohmann::json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

} // namespace

std::string failure_json(const FailureRecord& f, const std::string& problem) {
    nlohmann::json j;
    j["problem"] = problem;
    j["status"] = "failed";
    j["step"] = f.step;
    j["t"] = number(f.t);
    j["cell"] = {f.i, f.j};
    j["rho"] = number(f.rho);
    j["p"] = number(f.p);
    j["message"] = f.message;
    return j.dump(2) + "\n";
}

std::string summary_json(const RunSummary& s) {
    nlohmann::json j;
    j["problem"] = s.problem;
    j["status"] = s.status;
    j["mesh"] = s.mesh;
    j["t_final"] = number(s.t_final);
    j["t_reached"] = number(s.t_reached);
    j["steps"] = s.steps;
    j["min_rho"] = number(s.min_rho);
    j["min_p"] = number(s.min_p);
    j["min_theta"] = number(s.min_theta);
    j["wall_seconds"] = number(s.wall_seconds);
    j["limiter"] = s.limiter;
    j["cfl"] = number(s.cfl);
    return j.dump(2) + "\n";
}

template std::vector<std::string> snapshot_columns<1>();
template std::vector<std::string> snapshot_columns<2>();
template void write_snapshot<1>(std::ostream&, const Field<1>&, const Domain<1>&, const std::string&, double,
                                const GasModel&);
template void write_snapshot<2>(std::ostream&, const Field<2>&, const Domain<2>&, const std::string&, double,
                                const GasModel&);
template Field<1> snapshot_field<1>(const SnapshotData&, const Grid<1>&);
template Field<2> snapshot_field<2>(const SnapshotData&, const Grid<2>&);
template void write_diagnostics_header<1>(std::ostream&);
template void write_diagnostics_header<2>(std::ostream&);
template void write_diagnostics_row<1>(std::ostream&, const StepDiagnostics<1>&);
template void write_diagnostics_row<2>(std::ostream&, const StepDiagnostics<2>&);
template ErrorNorms density_errors<1>(const Field<1>&, const Field<1>&, const Domain<1>&);
template ErrorNorms density_errors<2>(const Field<2>&, const Field<2>&, const Domain<2>&);

} // namespace pifweno
