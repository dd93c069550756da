#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eqm/cli.hpp"

namespace {

int finish(const eqm::cli::CommandOutput& r) {
    std::cout << r.out << std::flush;
    std::cerr << r.err << std::flush;
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace eqm;
    CLI::App app{"Equilibrium measures of logarithmic energy with an external field"};
    app.require_subcommand(1);

    std::string problem_path;
    auto add_problem = [&](CLI::App* sub) { sub->add_option("--problem", problem_path, "problem JSON file")->required(); };

    auto* solve = app.add_subcommand("solve", "solve the endpoint equations and certify the density");
    add_problem(solve);
    std::optional<std::string> ansatz, out_dir;
    std::optional<double> tol;
    solve->add_option("--ansatz", ansatz, "auto | onecut | twocut-sym");
    solve->add_option("--tol", tol, "residual tolerance");
    solve->add_option("--out", out_dir, "directory for report.json and density.csv");

    auto* sweep = app.add_subcommand("sweep", "solve over a range of t");
    add_problem(sweep);
    double t_from = 0.0, t_to = 0.0;
    int steps = 0;
    bool log_scale = false;
    sweep->add_option("--t-from", t_from)->required();
    sweep->add_option("--t-to", t_to)->required();
    sweep->add_option("--steps", steps)->required();
    sweep->add_flag("--log", log_scale, "logarithmic spacing in |t|");

    auto* predict = app.add_subcommand("predict", "large-|t| asymptotic prediction");
    add_problem(predict);
    std::string sign;
    predict->add_option("--sign", sign, "+ or -")->required();

    auto* orc = app.add_subcommand("oracle", "direct minimization on a grid");
    add_problem(orc);
    int grid_n = 2001, iters = 50000;
    std::optional<std::string> oracle_out;
    orc->add_option("--grid-n", grid_n)->required();
    orc->add_option("--iters", iters)->required();
    orc->add_option("--out", oracle_out, "directory for oracle.csv and oracle.json");

    auto* ver = app.add_subcommand("verify", "certify a density CSV");
    add_problem(ver);
    std::string density_path;
    ver->add_option("--density", density_path, "CSV with header xi,psi")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << cli::error_json("ParseError", e.what(), cli::exit_code::parse_error);
        return cli::exit_code::parse_error;
    }

    ProblemFile problem;
    try {
        problem = load_problem(problem_path);
    } catch (const Error& e) {
        const int c = cli::exit_code_for(e);
        std::cerr << cli::error_json(e.code(), e.what(), c);
        return c;
    }

    if (solve->parsed()) return finish(cli::cmd_solve(problem, {ansatz, tol, out_dir}));
    if (sweep->parsed()) return finish(cli::cmd_sweep(problem, t_from, t_to, steps, log_scale, cli::thread_count()));
    if (predict->parsed()) return finish(cli::cmd_predict(problem, sign));
    if (orc->parsed()) return finish(cli::cmd_oracle(problem, grid_n, iters, oracle_out));
    return finish(cli::cmd_verify(problem, density_path));
}
