// mhdshock command-line front end.
//
// Subcommands:
//   shock        construct a planar shock and print its states as JSON
//   delta        evaluate the Lopatinski determinant at one frequency
//   theorem1     locate the axis zero in rho^+ over an a-grid
//   critical     trace the critical manifold a -> (R, gamma) for each c
//   instability  trace the unstable mode xi -> alpha + i beta
//
// Grid commands emit CSV (default) or JSON.  CSV is byte-deterministic:
// fixed "%.16e" floats, comma delimiter, single header row.
//
// Exit codes: 0 success, 2 invalid or infeasible parameters, 3 convergence
// or evaluation failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mhdshock/lopatinski.hpp"
#include "mhdshock/shock.hpp"
#include "mhdshock/tracker.hpp"

namespace {

using json = nlohmann::json;
using namespace mhdshock;

constexpr const char* kVersion = "1.0.0";

/// 17 significant digits, scientific, "." decimal separator.
std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

int exit_code_for(const Error& e)
{
    switch (e.kind()) {
        case ErrorKind::Domain:
        case ErrorKind::NoShock:
            return 2;
        default:
            return 3;
    }
}

struct OutputOptions {
    std::string format = "csv";
    std::string out_path;  ///< empty -> stdout
};

void write_text(const OutputOptions& o, const std::string& text)
{
    if (o.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::Domain, "cannot open output file: " + o.out_path);
    f << text;
}

json meta_object(double newton_tol, double axis_eps)
{
    char stamp[32];
    std::time_t now = std::time(nullptr);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return json{{"tool", "mhdshock"},
                {"version", kVersion},
                {"newton_tol", newton_tol},
                {"axis_eps", axis_eps},
                {"timestamp", stamp}};
}

/// Renders rows either as CSV (header + "%.16e" cells) or as a JSON object
/// {"rows": [...], "meta": {...}} mirroring the CSV columns.
std::string render_table(const OutputOptions& o, const std::vector<std::string>& columns,
                         const std::vector<std::vector<double>>& rows,
                         double newton_tol, double axis_eps)
{
    if (o.format == "csv") {
        std::ostringstream os;
        for (size_t i = 0; i < columns.size(); ++i)
            os << (i ? "," : "") << columns[i];
        os << "\n";
        for (const auto& row : rows) {
            for (size_t i = 0; i < row.size(); ++i)
                os << (i ? "," : "") << fmt(row[i]);
            os << "\n";
        }
        return os.str();
    }
    json rows_json = json::array();
    for (const auto& row : rows) {
        json obj;
        for (size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
        rows_json.push_back(obj);
    }
    json doc{{"rows", rows_json}, {"meta", meta_object(newton_tol, axis_eps)}};
    return doc.dump(2) + "\n";
}

json state_json(const State& s)
{
    return json{{"rho", s.rho}, {"v", s.v}, {"w", s.w}, {"a", s.a}, {"b", s.b}};
}

/// Tries the slow branch first, then the fast branch.
ShockWave solve_any_branch(const ShockParameters& p)
{
    try {
        return solve_shock(p, ShockBranch::Slow);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoShock) throw;
    }
    return solve_shock(p, ShockBranch::Fast);
}

std::vector<double> parse_c_list(const std::string& spec)
{
    std::vector<double> out;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw Error(ErrorKind::Domain, "bad --c-list entry: " + tok);
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorKind::Domain, "--c-list is empty");
    return out;
}

/// Reads the last data row of a previously written CSV table and interprets
/// it as a continuation seed.  For `critical` output the row is
/// (a, c, R, gamma, residual); for `instability` it is
/// (xi, a, rho_plus, alpha, beta, residual).
std::optional<CriticalPoint> read_seed_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw Error(ErrorKind::Domain, "cannot open seed file: " + path);
    std::string line, last;
    std::getline(f, line);  // header
    bool instability_layout = line.rfind("xi,", 0) == 0;
    while (std::getline(f, line))
        if (!line.empty()) last = line;
    if (last.empty()) return std::nullopt;

    std::vector<double> vals;
    std::stringstream ss(last);
    std::string tok;
    while (std::getline(ss, tok, ','))
        vals.push_back(std::stod(tok));

    CriticalPoint cp{};
    if (instability_layout) {
        if (vals.size() < 6) throw Error(ErrorKind::Domain, "seed row too short");
        cp.a = vals[1];
        cp.c = 0.0;
        cp.R = vals[2];
        cp.gamma = vals[4];
        cp.residual = vals[5];
    } else {
        if (vals.size() < 5) throw Error(ErrorKind::Domain, "seed row too short");
        cp.a = vals[0];
        cp.c = vals[1];
        cp.R = vals[2];
        cp.gamma = vals[3];
        cp.residual = vals[4];
    }
    return cp;
}

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; rethrows the first
/// failure.  Results must be written by fn into pre-sized slots so output
/// stays in grid order.
template <class Fn>
void parallel_for(int n, int jobs, Fn fn)
{
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex mu;
    std::exception_ptr first_error;
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// --- subcommands -----------------------------------------------------------

int cmd_shock(double a, double rho_plus, double c, const OutputOptions& o)
{
    const ShockWave s = solve_any_branch({a, rho_plus, c});
    json doc{{"left", state_json(s.left)},
             {"right", state_json(s.right)},
             {"m", s.m},
             {"j", s.j},
             {"c", s.c},
             {"lax_type", to_string(s.lax_type)},
             {"rh_residual", rh_residual(s)}};
    write_text(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_delta(double a, double rho_plus, double c, double lambda_re, double lambda_im,
              double omega, double axis_eps, const OutputOptions& o)
{
    if (lambda_re < 0.0) {
        std::cerr << "error: lambda outside S+ (Re lambda < 0)\n";
        return 2;
    }
    const ShockWave s = solve_any_branch({a, rho_plus, c});
    DeltaValue d = (lambda_re == 0.0)
                       ? delta_on_axis(s, lambda_im, omega, axis_eps)
                       : delta(s, {Complex(lambda_re, lambda_im), omega});
    std::ostringstream dims;
    dims << d.dim_stable_minus << "," << d.dim_unstable_plus;
    json doc{{"delta_re", d.delta.real()},
             {"delta_im", d.delta.imag()},
             {"sigma_min", d.sigma_min},
             {"dims", dims.str()},
             {"regularized", d.regularized},
             {"eps", d.eps}};
    write_text(o, doc.dump(2) + "\n");
    return 0;
}

int cmd_theorem1(double a_from, double a_to, int steps, double axis_eps, int jobs,
                 double newton_tol, const OutputOptions& o)
{
    if (steps < 1) throw Error(ErrorKind::Domain, "steps must be >= 1");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = (steps == 1) ? a_from : a_from + (a_to - a_from) * i / (steps - 1);

    std::vector<Theorem1Row> rows(steps);
    parallel_for(steps, jobs, [&](int i) {
        rows[i] = verify_theorem1({grid[i]}, axis_eps).front();
    });

    std::vector<std::vector<double>> table;
    for (const auto& r : rows)
        table.push_back({r.a, r.rho_formula, r.rho_numeric, r.gap,
                         r.no_shock ? 1.0 : 0.0});
    write_text(o, render_table(o, {"a", "rho_formula", "rho_numeric", "gap", "noshock"},
                               table, newton_tol, axis_eps));
    return 0;
}

int cmd_critical(double a_from, double a_to, int steps, const std::string& c_list,
                 double axis_eps, int jobs, double newton_tol,
                 const std::string& seed_file, const OutputOptions& o)
{
    const std::vector<double> cs = parse_c_list(c_list);
    std::optional<CriticalPoint> seed;
    if (!seed_file.empty()) seed = read_seed_file(seed_file);

    std::vector<CriticalTrace> traces(cs.size());
    parallel_for(static_cast<int>(cs.size()), jobs, [&](int i) {
        traces[i] = trace_critical_curve(cs[i], a_from, a_to, steps, axis_eps, seed);
    });

    std::vector<std::vector<double>> table;
    for (const auto& tr : traces)
        for (const auto& p : tr.points)
            table.push_back({p.a, p.c, p.R, p.gamma, p.residual});
    write_text(o, render_table(o, {"a", "c", "R", "gamma", "residual"},
                               table, newton_tol, axis_eps));
    return 0;
}

int cmd_instability(double a0, double c, double xi_max, int steps, double axis_eps,
                    double newton_tol, const std::string& seed_file, const OutputOptions& o)
{
    std::optional<CriticalPoint> seed;
    if (!seed_file.empty()) seed = read_seed_file(seed_file);

    RootOptions opt;
    opt.tol = newton_tol;
    opt.eps = axis_eps;
    const auto branch = trace_instability(a0, c, xi_max, steps, opt, seed);

    std::vector<std::vector<double>> table;
    for (const auto& p : branch)
        table.push_back({p.xi, p.a0 + p.xi, 0.0, p.alpha, p.beta, p.residual});
    // rho_plus is constant along the branch: R(a0, c) from the xi = 0 point.
    const CriticalPoint cp = solve_critical_point(a0, c, seed, axis_eps);
    for (auto& row : table) row[2] = cp.R;

    write_text(o, render_table(o, {"xi", "a", "rho_plus", "alpha", "beta", "residual"},
                               table, newton_tol, axis_eps));
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Planar MHD shock waves and their Lopatinski determinant"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    double a = 0, rho_plus = 0, c = 0;
    double lambda_re = 0, lambda_im = 0, omega = 1;
    double a_from = 0, a_to = 0, a0 = 0, xi_max = 0;
    int steps = 2, jobs = 1;
    double newton_tol = 1e-12, axis_eps = 1e-7;
    std::string c_list = "0", seed_file;
    OutputOptions out;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out.out_path, "output path (default: stdout)");
    };
    auto add_tols = [&](CLI::App* cmd) {
        cmd->add_option("--newton-tol", newton_tol)->check(CLI::PositiveNumber);
        cmd->add_option("--axis-eps", axis_eps)->check(CLI::PositiveNumber);
    };
    auto add_shock_flags = [&](CLI::App* cmd) {
        cmd->add_option("--a", a)->required();
        cmd->add_option("--rho-plus", rho_plus)->required();
        cmd->add_option("--c", c);
    };

    CLI::App* shock = app.add_subcommand("shock", "construct a planar shock");
    add_shock_flags(shock);
    add_output(shock);

    CLI::App* delta = app.add_subcommand("delta", "evaluate the Lopatinski determinant");
    add_shock_flags(delta);
    delta->add_option("--lambda-re", lambda_re)->required();
    delta->add_option("--lambda-im", lambda_im)->required();
    delta->add_option("--omega", omega)->required();
    add_tols(delta);
    add_output(delta);

    CLI::App* theorem1 = app.add_subcommand("theorem1", "locate the axis zero in rho+");
    theorem1->add_option("--a-from", a_from)->required();
    theorem1->add_option("--a-to", a_to);
    theorem1->add_option("--steps", steps);
    theorem1->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    add_tols(theorem1);
    add_output(theorem1);

    CLI::App* critical = app.add_subcommand("critical", "trace the critical manifold");
    critical->add_option("--a-from", a_from)->required();
    critical->add_option("--a-to", a_to)->required();
    critical->add_option("--steps", steps);
    critical->add_option("--c-list", c_list, "comma-separated c values");
    critical->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    critical->add_option("--seed-file", seed_file, "resume from a prior CSV row");
    add_tols(critical);
    add_output(critical);

    CLI::App* instability = app.add_subcommand("instability", "trace the unstable mode");
    instability->add_option("--a0", a0)->required();
    instability->add_option("--c", c);
    instability->add_option("--xi-max", xi_max)->required();
    instability->add_option("--steps", steps);
    instability->add_option("--seed-file", seed_file, "resume from a prior CSV row");
    add_tols(instability);
    add_output(instability);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (shock->parsed()) return cmd_shock(a, rho_plus, c, out);
        if (delta->parsed())
            return cmd_delta(a, rho_plus, c, lambda_re, lambda_im, omega, axis_eps, out);
        if (theorem1->parsed())
            return cmd_theorem1(a_from, a_to, steps, axis_eps, jobs, newton_tol, out);
        if (critical->parsed())
            return cmd_critical(a_from, a_to, steps, c_list, axis_eps, jobs, newton_tol,
                                seed_file, out);
        if (instability->parsed())
            return cmd_instability(a0, c, xi_max, steps, axis_eps, newton_tol, seed_file, out);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
