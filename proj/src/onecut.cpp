#include "eqm/onecut.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "eqm/asymptotics.hpp"
#include "eqm/epd.hpp"
#include "eqm/errors.hpp"
#include "eqm/landscape.hpp"
#include "eqm/quadrature.hpp"
#include "newton.hpp"

namespace eqm::onecut {

namespace {

constexpr double pi = std::numbers::pi;

int mass_nodes(const LocalField& f) {
    return f.is_polynomial() ? std::max(8, f.polynomial_degree() + 2) : 512;
}

bool collapsed(double origin, double a1, double a2) {
    return a1 - a2 < 1e-12 * std::max(1.0, std::abs(origin + a1));
}

}  // namespace

std::pair<double, double> residual(const LocalField& field, double a1, double a2) {
    if (!(a2 < a1)) throw InvalidInterval("one-cut endpoints must satisfy u2 < u1");
    const epd::EpdSpec psi{0, epd::Kind::psi, field};
    const double d = epd::phi_partial(psi, a1, {a1, a2}, 2);
    if (d < 0.0) throw NegativeRadicand("dPsi0/du2 is negative");
    const double F1 = (a1 - a2) * std::sqrt(d) - 1.0 / std::sqrt(pi);
    auto dv = [&field](double x) { return field.derivative(x, 1); };
    const double F2 = (a1 - a2) / (2.0 * pi) * quad::band_integral(dv, a1, a2, mass_nodes(field));
    return {F1, F2};
}

OneCutSolution solve_endpoints(const FieldSpec& field, std::optional<std::pair<double, double>> guess,
                               const SolverOptions& opts) {
    const auto growth = field.validate_growth();
    if (!growth.ok) throw InvalidField(growth.diagnostic);
    const double origin = global_minimum(field).x;
    const LocalField lf(field, origin);

    std::vector<detail::Vec2> seeds;
    if (guess) {
        if (!(guess->second < guess->first)) throw InvalidInterval("guess must satisfy u2 < u1");
        if (collapsed(0.0, guess->first, guess->second)) throw NoConvergence("support collapsed to a point");
        seeds.push_back({guess->first - origin, guess->second - origin});
    } else {
        const double r = mass_radius(lf, 1.0);
        seeds.push_back({r, -r});
        try {
            if (auto a = asymptotics::seed_endpoints(field, 0)) seeds.push_back({a->first - origin, a->second - origin});
        } catch (const UnsupportedRegime&) {
        }
    }

    detail::Residual2 F = [&](const detail::Vec2& a) -> std::optional<detail::Vec2> {
        if (!(a[1] < a[0]) || collapsed(origin, a[0], a[1])) return std::nullopt;
        try {
            const auto [f1, f2] = residual(lf, a[0], a[1]);
            if (!std::isfinite(f1) || !std::isfinite(f2)) return std::nullopt;
            return detail::Vec2{f1, f2};
        } catch (const NegativeRadicand&) {
            return std::nullopt;
        }
    };
    auto step = [](const detail::Vec2& a) { return 1e-6 * (a[0] - a[1]); };

    OneCutSolution best;
    best.origin = origin;
    best.residual_norm = INFINITY;
    for (const auto& s : seeds) {
        const auto r = detail::damped_newton(F, s, opts.tol, opts.max_iter, opts.max_halvings, step);
        if (r.norm < best.residual_norm || best.message.empty()) {
            best.local_u1 = r.x[0];
            best.local_u2 = r.x[1];
            best.residual_norm = r.norm;
            best.iterations = r.iterations;
            best.converged = r.converged;
            best.message = r.message;
        }
        if (r.converged) break;
    }
    return best;
}

double psi(const OneCutSolution& sol, const FieldSpec& field, double xi) {
    const double x = xi - sol.origin;
    if (!(x > sol.local_u2 && x < sol.local_u1)) return 0.0;
    const LocalField lf(field, sol.origin);
    const double phi = epd::phi_eval(epd::EpdSpec{0, epd::Kind::phi, lf}, x, {sol.local_u1, sol.local_u2});
    return 2.0 * std::sqrt((sol.local_u1 - x) * (x - sol.local_u2)) * phi;
}

DensityTable density(OneCutSolution& sol, const FieldSpec& field, int grid_n) {
    if (!sol.converged) throw DomainError("density requires a converged solution");
    if (grid_n < 3) throw DomainError("grid_n must be at least 3");
    const LocalField lf(field, sol.origin);
    const double a1 = sol.local_u1, a2 = sol.local_u2;
    const double mid = 0.5 * (a1 + a2), half = 0.5 * (a1 - a2);
    const epd::EpdSpec phi{0, epd::Kind::phi, lf};

    Band band;
    band.lo = a2;
    band.hi = a1;
    band.chebyshev = true;
    band.x.resize(static_cast<std::size_t>(grid_n));
    band.psi.resize(static_cast<std::size_t>(grid_n));
    double peak = 0.0;
    for (int j = 0; j < grid_n; ++j) {
        const std::size_t i = static_cast<std::size_t>(grid_n - 1 - j);
        const double th = pi * j / (grid_n - 1);
        const double x = (j == 0) ? a1 : (j == grid_n - 1) ? a2 : (2 * j == grid_n - 1 ? mid : mid + half * std::cos(th));
        band.x[i] = x;
        const double w = half * std::sin(th);
        band.psi[i] = (j == 0 || j == grid_n - 1) ? 0.0 : 2.0 * w * epd::phi_eval(phi, x, {a1, a2});
        peak = std::max(peak, band.psi[i]);
    }
    for (double& p : band.psi) {
        if (p < -1e-6 * std::max(1.0, peak)) throw NegativeDensity("one-cut density is negative inside the support");
        if (p < 0.0) p = 0.0;
    }
    band.prepare();

    DensityTable table;
    table.origin = sol.origin;
    table.bands.push_back(std::move(band));
    table.lagrange_l = quad::log_kernel_integral(table, mid) - lf.value(mid);
    sol.lagrange_l = table.lagrange_l - field.value(sol.origin);
    return table;
}

}  // namespace eqm::onecut
