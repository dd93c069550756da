#include "eqm/pipeline.hpp"

#include <cmath>

#include "eqm/errors.hpp"
#include "eqm/rhp.hpp"
#include "eqm/twocut.hpp"

namespace eqm::pipeline {

Ansatz parse_ansatz(const std::string& s) {
    if (s == "auto") return Ansatz::automatic;
    if (s == "onecut") return Ansatz::onecut;
    if (s == "twocut-sym") return Ansatz::twocut_sym;
    throw ParseError("unknown ansatz '" + s + "' (expected auto, onecut or twocut-sym)");
}

std::string ansatz_name(Ansatz a) {
    switch (a) {
        case Ansatz::automatic: return "auto";
        case Ansatz::onecut: return "onecut";
        case Ansatz::twocut_sym: return "twocut-sym";
    }
    return "auto";
}

std::vector<double> q_coefficients(const SolveResult& r, const FieldSpec& field, std::size_t index, double perturb) {
    std::vector<long double> u = r.local_endpoints;
    const LocalField lf(field, r.density.origin);
    if (perturb != 0.0) {
        const long double origin = r.density.origin;
        u.at(index) += static_cast<long double>(perturb) * (origin + u[index]);
        if (r.ansatz == Ansatz::twocut_sym) u[u.size() - 1 - index] = -u[index];
    }
    if (lf.is_polynomial()) return rhp::q_polynomial_ext(u, lf).coefficients;
    const std::vector<double> ud(u.begin(), u.end());
    return rhp::q_polynomial(rhp::EndpointVector(static_cast<int>(u.size()) / 2 - 1, ud), lf).coefficients;
}

SolveResult solve_with(const FieldSpec& field, Ansatz ansatz, const SolverOptions& opts, int grid_n) {
    SolveResult out;
    out.ansatz = ansatz;
    if (ansatz == Ansatz::onecut) {
        auto sol = onecut::solve_endpoints(field, std::nullopt, opts);
        if (!sol.converged) throw NoConvergence("one-cut endpoint equations did not converge: " + sol.message);
        out.density = onecut::density(sol, field, grid_n);
        out.endpoints = {sol.u1(), sol.u2()};
        out.local_endpoints = {sol.local_u1, sol.local_u2};
        out.lagrange_l = sol.lagrange_l;
        out.residual_norm = sol.residual_norm;
        out.iterations = sol.iterations;
    } else if (ansatz == Ansatz::twocut_sym) {
        auto sol = twocut::solve_endpoints_symmetric(field, std::nullopt, opts);
        if (!sol.converged) throw NoConvergence("two-cut endpoint equations did not converge: " + sol.message);
        out.density = twocut::density_symmetric(sol, field, grid_n);
        out.endpoints = {sol.u1, sol.u2, -sol.u2, -sol.u1};
        out.local_endpoints = {sol.u1_ext, sol.u2_ext, -sol.u2_ext, -sol.u1_ext};
        out.lagrange_l = sol.lagrange_l;
        out.residual_norm = sol.residual_norm;
        out.iterations = sol.iterations;
    } else {
        throw DomainError("solve_with requires a concrete ansatz");
    }
    const LocalField lf(field, out.density.origin);
    const std::vector<double> ud(out.local_endpoints.begin(), out.local_endpoints.end());
    out.hodograph = rhp::hodograph_residual(rhp::EndpointVector(static_cast<int>(ud.size()) / 2 - 1, ud), lf);
    for (double c : q_coefficients(out, field)) out.q_max = std::max(out.q_max, std::abs(c));
    out.report = verify::certify(out.density, field);
    out.verified = out.report.passed();
    return out;
}

SolveResult solve(const FieldSpec& field, Ansatz ansatz, const SolverOptions& opts, int grid_n) {
    if (ansatz != Ansatz::automatic) return solve_with(field, ansatz, opts, grid_n);
    std::optional<SolveResult> first;
    std::exception_ptr first_error;
    try {
        first = solve_with(field, Ansatz::onecut, opts, grid_n);
        if (first->verified) return *first;
    } catch (const NoConvergence&) {
        first_error = std::current_exception();
    } catch (const NegativeDensity&) {
        first_error = std::current_exception();
    }
    if (field.is_even()) {
        try {
            auto second = solve_with(field, Ansatz::twocut_sym, opts, grid_n);
            if (second.verified || !first) return second;
        } catch (const NoConvergence&) {
        } catch (const NegativeDensity&) {
        }
    }
    if (first) return *first;
    std::rethrow_exception(first_error);
}

nlohmann::json report_json(const SolveResult& r) {
    nlohmann::json j;
    j["ansatz"] = ansatz_name(r.ansatz);
    j["endpoints"] = r.endpoints;
    j["gaps"] = r.gaps();
    j["lagrange_l"] = r.lagrange_l;
    j["residual_norm"] = r.residual_norm;
    j["iterations"] = r.iterations;
    j["hodograph_residuals"] = r.hodograph;
    j["q_max"] = r.q_max;
    j["mass"] = r.density.mass();
    j["verification"] = verify::to_json(r.report);
    j["verified"] = r.verified;
    return j;
}

}  // namespace eqm::pipeline
