#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqm/density.hpp"
#include "eqm/errors.hpp"
#include "eqm/problem.hpp"

namespace eqm::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int no_convergence = 2;
inline constexpr int verification_failed = 3;
inline constexpr int parse_error = 4;
inline constexpr int unsupported_regime = 5;
}  // namespace exit_code

struct CommandOutput {
    int exit_code = 0;
    std::string out;
    std::string err;
};

int exit_code_for(const Error& e);
std::string error_json(const std::string& code, const std::string& message, int exit);

/// Runs `body`, converting library errors into exit codes and stderr JSON.
template <class F>
CommandOutput guarded(F&& body) {
    try {
        return body();
    } catch (const Error& e) {
        const int c = exit_code_for(e);
        return {c, "", error_json(e.code(), e.what(), c)};
    }
}

/// `xi,psi` rows in global coordinates, bands in ascending order.
std::string density_csv(const DensityTable& d);
/// Inverse of density_csv; bands split at consecutive zero samples.
DensityTable read_density_csv(std::istream& in, double origin = 0.0);

std::vector<double> sweep_values(double from, double to, int steps, bool log_scale);
/// EQM_THREADS if set and positive, otherwise the hardware concurrency.
int thread_count();

struct SolveArgs {
    std::optional<std::string> ansatz;
    std::optional<double> tol;
    std::optional<std::string> out_dir;
};

CommandOutput cmd_solve(const ProblemFile& problem, const SolveArgs& args = {});
CommandOutput cmd_sweep(const ProblemFile& problem, double t_from, double t_to, int steps, bool log_scale,
                        int threads);
CommandOutput cmd_predict(const ProblemFile& problem, const std::string& sign);
CommandOutput cmd_oracle(const ProblemFile& problem, int grid_n, int iters,
                         std::optional<std::string> out_dir = std::nullopt);
CommandOutput cmd_verify(const ProblemFile& problem, const std::string& density_path);

}  // namespace eqm::cli
