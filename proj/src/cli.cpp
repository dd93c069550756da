#include "eqm/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <fstream>
#include <sstream>
#include <thread>

#include "eqm/asymptotics.hpp"
#include "eqm/format.hpp"
#include "eqm/landscape.hpp"
#include "eqm/oracle.hpp"
#include "eqm/pipeline.hpp"
#include "eqm/verify.hpp"

namespace eqm::cli {

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    if (!out) throw DomainError("cannot write '" + p.string() + "'");
    out << text;
}

std::filesystem::path ensure_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw DomainError("cannot create output directory '" + dir + "'");
    return p;
}

bool looks_chebyshev(const Band& b) {
    const std::size_t n = b.x.size();
    if (n < 3) return false;
    const double mid = 0.5 * (b.lo + b.hi), half = 0.5 * (b.hi - b.lo);
    const double tol = 1e-9 * std::max({1.0, std::abs(mid), half});
    for (std::size_t i = 0; i < n; ++i) {
        const double expect = mid + half * std::cos(std::numbers::pi * static_cast<double>(n - 1 - i) / static_cast<double>(n - 1));
        if (std::abs(b.x[i] - expect) > tol) return false;
    }
    return true;
}

}  // namespace

int exit_code_for(const Error& e) {
    const auto& c = e.code();
    if (c == "NoConvergence") return exit_code::no_convergence;
    if (c == "NegativeDensity") return exit_code::verification_failed;
    if (c == "UnsupportedRegime") return exit_code::unsupported_regime;
    return exit_code::parse_error;
}

std::string error_json(const std::string& code, const std::string& message, int exit) {
    return nlohmann::json{{"error", code}, {"message", message}, {"exit_code", exit}}.dump() + "\n";
}

std::string density_csv(const DensityTable& d) {
    std::string out = "xi,psi\n";
    for (const auto& b : d.bands)
        for (std::size_t i = 0; i < b.x.size(); ++i)
            out += format_number(d.origin + b.x[i]) + ',' + format_number(b.psi[i]) + '\n';
    return out;
}

DensityTable read_density_csv(std::istream& in, double origin) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("density CSV is empty");
    if (line.rfind("xi,psi", 0) != 0) throw ParseError("density CSV must start with the header xi,psi");
    std::vector<std::pair<double, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("malformed density row '" + line + "'");
        char* end = nullptr;
        const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
        const double x = std::strtod(a.c_str(), &end);
        if (end == a.c_str()) throw ParseError("malformed density row '" + line + "'");
        const double p = std::strtod(b.c_str(), &end);
        if (end == b.c_str()) throw ParseError("malformed density row '" + line + "'");
        rows.emplace_back(x - origin, p);
    }
    if (rows.size() < 2) throw ParseError("density CSV needs at least two rows");
    DensityTable d;
    d.origin = origin;
    d.lagrange_l = std::nan("");
    Band cur;
    auto flush = [&] {
        if (cur.x.size() >= 2) {
            cur.lo = cur.x.front();
            cur.hi = cur.x.back();
            cur.chebyshev = looks_chebyshev(cur);
            if (cur.chebyshev) cur.prepare();
            d.bands.push_back(std::move(cur));
        }
        cur = Band{};
    };
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && !(rows[i].first > rows[i - 1].first)) throw ParseError("density abscissae must increase");
        if (i > 0 && rows[i].second == 0.0 && rows[i - 1].second == 0.0 && cur.x.size() >= 2) flush();
        cur.x.push_back(rows[i].first);
        cur.psi.push_back(rows[i].second);
    }
    flush();
    if (d.bands.empty()) throw ParseError("density CSV has no support");
    return d;
}

std::vector<double> sweep_values(double from, double to, int steps, bool log_scale) {
    if (steps < 1) throw ParseError("--steps must be at least 1");
    if (log_scale && (from == 0.0 || to == 0.0 || (from < 0.0) != (to < 0.0)))
        throw ParseError("log sweeps need a t range of one sign excluding 0");
    std::vector<double> t(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double s = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        if (log_scale) {
            const double sign = from < 0.0 ? -1.0 : 1.0;
            t[static_cast<std::size_t>(i)] =
                sign * std::exp(std::log(std::abs(from)) + s * (std::log(std::abs(to)) - std::log(std::abs(from))));
        } else {
            t[static_cast<std::size_t>(i)] = from + s * (to - from);
        }
    }
    t.front() = from;
    if (steps > 1) t.back() = to;
    return t;
}

int thread_count() {
    if (const char* env = std::getenv("EQM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<int>(std::min(v, 1024L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

CommandOutput cmd_solve(const ProblemFile& problem, const SolveArgs& args) {
    return guarded([&]() -> CommandOutput {
        const auto ansatz = args.ansatz ? pipeline::parse_ansatz(*args.ansatz) : problem.ansatz;
        SolverOptions opts = problem.solver;
        if (args.tol) {
            if (!(*args.tol > 0.0)) throw ParseError("--tol must be positive");
            opts.tol = *args.tol;
        }
        const auto r = pipeline::solve(problem.field, ansatz, opts);
        auto report = pipeline::report_json(r);
        report["field"] = field_to_json(problem.field);
        const std::string text = report.dump(2) + "\n";
        const std::string dir = args.out_dir ? *args.out_dir : problem.output_dir;
        if (!dir.empty()) {
            const auto p = ensure_dir(dir);
            write_file(p / "report.json", text);
            write_file(p / "density.csv", density_csv(r.density));
        }
        CommandOutput out{exit_code::ok, text, ""};
        if (!r.verified) {
            out.exit_code = exit_code::verification_failed;
            out.err = error_json("VerificationFailed", "constructed density failed the variational checks",
                                 exit_code::verification_failed);
        }
        return out;
    });
}

namespace {

struct SweepRow {
    std::string text;
    bool solved = false;
    bool verified = false;
};

SweepRow sweep_row(const ProblemFile& problem, double t) {
    SweepRow row;
    const FieldSpec f = problem.field.with_t(t);
    std::string cells;
    try {
        const auto r = pipeline::solve(f, problem.ansatz, problem.solver);
        row.solved = true;
        row.verified = r.verified;
        std::string e[4];
        for (std::size_t i = 0; i < r.endpoints.size() && i < 4; ++i) e[i] = format_number(r.endpoints[i]);
        std::string s1, s2;
        try {
            const auto pred = asymptotics::predict(f, t < 0 ? -1 : 1);
            const double scale = std::pow(std::abs(t), pred.scaling_exponent);
            s1 = format_number(r.endpoints[0] / scale);
            s2 = format_number(r.endpoints[1] / scale);
        } catch (const Error&) {
        }
        cells = pipeline::ansatz_name(r.ansatz) + ',' + (r.verified ? "ok" : "unresolved") + ',' +
                std::to_string(r.gaps()) + ',' + e[0] + ',' + e[1] + ',' + e[2] + ',' + e[3] + ',' + s1 + ',' + s2 +
                ',' + (r.verified ? "pass" : "fail");
    } catch (const Error& err) {
        cells = pipeline::ansatz_name(problem.ansatz) + ",failed:" + err.code() + ",,,,,,,,fail";
    }
    row.text = format_number(t) + ',' + cells + '\n';
    return row;
}

}  // namespace

CommandOutput cmd_sweep(const ProblemFile& problem, double t_from, double t_to, int steps, bool log_scale,
                        int threads) {
    return guarded([&]() -> CommandOutput {
        const auto ts = sweep_values(t_from, t_to, steps, log_scale);
        std::vector<SweepRow> rows(ts.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < ts.size(); i = next++) rows[i] = sweep_row(problem, ts[i]);
        };
        const int n = std::max(1, std::min<int>(threads, static_cast<int>(ts.size())));
        std::vector<std::thread> pool;
        for (int k = 1; k < n; ++k) pool.emplace_back(worker);
        worker();
        for (auto& th : pool) th.join();

        CommandOutput out;
        out.out = "t,ansatz,status,gaps,u1,u2,u3,u4,scaled_u1,scaled_u2,verified\n";
        bool any_verified = false, any_solved = false;
        for (const auto& r : rows) {
            out.out += r.text;
            any_verified = any_verified || r.verified;
            any_solved = any_solved || r.solved;
        }
        if (!any_verified) {
            out.exit_code = any_solved ? exit_code::verification_failed : exit_code::no_convergence;
            out.err = error_json(any_solved ? "VerificationFailed" : "NoConvergence", "no sweep row succeeded",
                                 out.exit_code);
        }
        return out;
    });
}

CommandOutput cmd_predict(const ProblemFile& problem, const std::string& sign) {
    return guarded([&]() -> CommandOutput {
        int s = 0;
        if (sign == "+" || sign == "+1" || sign == "pos") s = 1;
        else if (sign == "-" || sign == "-1" || sign == "neg") s = -1;
        else throw ParseError("--sign must be + or -");
        const auto p = asymptotics::predict(problem.field, s);
        nlohmann::json j{{"regime", asymptotics::regime_name(p.regime)},
                         {"scaling_exponent", p.scaling_exponent},
                         {"limit_constant", p.limit_constant},
                         {"well_location", p.well_location},
                         {"side", p.side},
                         {"n", p.n}};
        if (p.M > 0.0) {
            j["M"] = p.M;
            j["C"] = p.C;
        }
        return {exit_code::ok, j.dump(2) + "\n", ""};
    });
}

CommandOutput cmd_oracle(const ProblemFile& problem, int grid_n, int iters, std::optional<std::string> out_dir) {
    return guarded([&]() -> CommandOutput {
        if (grid_n < 2 || iters < 1) throw ParseError("--grid-n and --iters must be positive");
        std::optional<pipeline::SolveResult> constructed;
        try {
            constructed = pipeline::solve(problem.field, problem.ansatz, problem.solver);
        } catch (const NoConvergence&) {
        } catch (const NegativeDensity&) {
        }
        double a = -2.0, b = 2.0;
        if (constructed) {
            const double lo = constructed->endpoints.back(), hi = constructed->endpoints.front();
            a = lo - 0.5 * (hi - lo);
            b = hi + 0.5 * (hi - lo);
        } else {
            const double c = global_minimum(problem.field).x;
            a = c - 2.0;
            b = c + 2.0;
        }
        const oracle::DiscreteProblem dp(problem.field, a, b, grid_n);
        const auto m = oracle::direct_minimize(dp, iters);
        const auto comp = oracle::complementarity(dp, m.psi);
        nlohmann::json j;
        j["interval"] = {a, b};
        j["grid_n"] = grid_n;
        j["h"] = dp.h();
        j["iterations"] = m.iterations;
        j["residual"] = m.residual;
        j["converged"] = m.converged;
        j["not_converged"] = !m.converged;
        j["energy"] = dp.energy(m.psi);
        j["complementarity"] = {{"lambda", comp.lambda},
                                {"support_spread", comp.support_spread},
                                {"off_support_slack", comp.off_support_slack},
                                {"ok", comp.ok}};
        if (constructed) {
            auto metrics = oracle::to_json(oracle::compare(dp, constructed->density, m.psi));
            metrics["constructed_energy"] = dp.energy(oracle::sample_on_grid(dp, constructed->density));
            metrics["constructed_ansatz"] = pipeline::ansatz_name(constructed->ansatz);
            metrics["constructed_endpoints"] = constructed->endpoints;
            j["comparison"] = metrics;
        } else {
            j["comparison"] = nullptr;
        }
        const std::string dir = out_dir ? *out_dir : problem.output_dir;
        if (!dir.empty()) {
            std::string csv = "xi,psi\n";
            for (std::size_t i = 0; i < m.psi.size(); ++i)
                csv += format_number(dp.grid()[i]) + ',' + format_number(m.psi[i]) + '\n';
            const auto p = ensure_dir(dir);
            write_file(p / "oracle.csv", csv);
            write_file(p / "oracle.json", j.dump(2) + "\n");
        }
        return {exit_code::ok, j.dump(2) + "\n", ""};
    });
}

CommandOutput cmd_verify(const ProblemFile& problem, const std::string& density_path) {
    return guarded([&]() -> CommandOutput {
        std::ifstream in(density_path);
        if (!in) throw ParseError("cannot open density CSV '" + density_path + "'");
        // one-band tables are re-centred at the minimizer of V
        std::stringstream buf;
        buf << in.rdbuf();
        std::istringstream first(buf.str());
        auto d = read_density_csv(first, 0.0);
        if (d.bands.size() == 1) {
            std::istringstream again(buf.str());
            d = read_density_csv(again, global_minimum(problem.field).x);
        }
        const auto r = verify::certify(d, problem.field);
        nlohmann::json j = verify::to_json(r);
        j["mass"] = d.mass();
        CommandOutput out{exit_code::ok, j.dump(2) + "\n", ""};
        if (!r.passed()) {
            out.exit_code = exit_code::verification_failed;
            out.err = error_json("VerificationFailed", "density failed the variational checks",
                                 exit_code::verification_failed);
        }
        return out;
    });
}

}  // namespace eqm::cli
