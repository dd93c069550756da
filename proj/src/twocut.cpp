#include "eqm/twocut.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "eqm/asymptotics.hpp"
#include "eqm/epd.hpp"
#include "eqm/errors.hpp"
#include "eqm/landscape.hpp"
#include "eqm/quadrature.hpp"
#include "newton.hpp"

namespace eqm::twocut {

namespace {

constexpr double pi = std::numbers::pi;

int mass_nodes(const LocalField& f) {
    return f.is_polynomial() ? std::max(16, f.polynomial_degree() + 2) : 512;
}

std::optional<detail::Vec2> well_seed(const FieldSpec& field) {
    double c = 0.0;
    bool found = false;
    for (const auto& m : local_minima(field))
        if (m.x > 0.0 && (!found || m.value < field.value(c))) {
            c = m.x;
            found = true;
        }
    if (!found) return std::nullopt;
    const double r = mass_radius(LocalField(field, c), 0.5);
    if (!(c - r > 0.0)) return std::nullopt;
    return detail::Vec2{c + r, c - r};
}

double right_band_psi(const LocalField& lf, double x, double u1, double u2) {
    const double phi = epd::phi_eval(epd::EpdSpec{1, epd::Kind::phi, lf}, x, {u1, u2, -u2, -u1});
    return 2.0 * std::sqrt((u1 * u1 - x * x) * (x * x - u2 * u2)) * phi;
}

using Ext2 = std::array<long double, 2>;

Ext2 residual_ext(const LocalField& field, long double u1, long double u2) {
    const epd::EpdSpec psi{1, epd::Kind::psi, field};
    const std::vector<long double> u{u1, u2, -u2, -u1};
    const long double d = epd::phi_partial_ext(psi, u1, u, 2);
    const long double F1 = (u1 - u2) * std::sqrt(2.0L * (u1 + u2)) * std::sqrt(std::max(d, 0.0L)) -
                           1.0L / std::sqrt(std::numbers::pi_v<long double>);
    const long double F2 = (u1 * u1 - u2 * u2) / 2.0L * (epd::phi_eval_ext(psi, u1, u) + epd::phi_eval_ext(psi, u2, u));
    return {F1, F2};
}

// A few Newton steps in long double starting from the converged double root.
void polish(const LocalField& field, TwoCutSolution& sol) {
    long double a = sol.u1, b = sol.u2;
    Ext2 f = residual_ext(field, a, b);
    long double nf = std::hypot(f[0], f[1]);
    for (int it = 0; it < 6 && nf > 0.0L; ++it) {
        const long double h = 1e-7L * (a - b);
        const Ext2 fa = residual_ext(field, a + h, b), fam = residual_ext(field, a - h, b);
        const Ext2 fb = residual_ext(field, a, b + h), fbm = residual_ext(field, a, b - h);
        const long double J00 = (fa[0] - fam[0]) / (2 * h), J10 = (fa[1] - fam[1]) / (2 * h);
        const long double J01 = (fb[0] - fbm[0]) / (2 * h), J11 = (fb[1] - fbm[1]) / (2 * h);
        const long double det = J00 * J11 - J01 * J10;
        if (det == 0.0L) break;
        const long double na = a - (J11 * f[0] - J01 * f[1]) / det;
        const long double nb = b - (-J10 * f[0] + J00 * f[1]) / det;
        const Ext2 fn = residual_ext(field, na, nb);
        const long double nn = std::hypot(fn[0], fn[1]);
        if (!(nn < nf)) break;
        a = na;
        b = nb;
        f = fn;
        nf = nn;
    }
    sol.u1_ext = a;
    sol.u2_ext = b;
    sol.u1 = static_cast<double>(a);
    sol.u2 = static_cast<double>(b);
}

}  // namespace

std::pair<double, double> residual(const LocalField& field, double u1, double u2) {
    if (!(0.0 < u2 && u2 < u1)) throw InvalidInterval("two-cut endpoints must satisfy 0 < u2 < u1");
    const epd::EpdSpec psi{1, epd::Kind::psi, field};
    const double d = epd::phi_partial(psi, u1, {u1, u2, -u2, -u1}, 2);
    if (d < 0.0) throw NegativeRadicand("dPsi1/du2 is negative");
    const double F1 = (u1 - u2) * std::sqrt(2.0 * (u1 + u2)) * std::sqrt(d) - 1.0 / std::sqrt(pi);
    auto dv = [&field](double x) { return field.derivative(x, 1); };
    const double F2 =
        (u1 * u1 - u2 * u2) / (2.0 * pi) * quad::symmetric_band_integral(dv, u1, u2, mass_nodes(field));
    return {F1, F2};
}

TwoCutSolution solve_endpoints_symmetric(const FieldSpec& field, std::optional<std::pair<double, double>> guess,
                                         const SolverOptions& opts) {
    if (!field.is_even()) throw NotEven("symmetric two-cut solve requires an even field");
    const auto growth = field.validate_growth();
    if (!growth.ok) throw InvalidField(growth.diagnostic);
    const LocalField lf(field, 0.0);

    std::vector<detail::Vec2> seeds;
    if (guess) {
        if (!(0.0 < guess->second && guess->second < guess->first))
            throw InvalidInterval("guess must satisfy 0 < u2 < u1");
        seeds.push_back({guess->first, guess->second});
    } else {
        if (auto s = well_seed(field)) seeds.push_back(*s);
        try {
            if (auto a = asymptotics::seed_endpoints(field, 1)) seeds.push_back({a->first, a->second});
        } catch (const UnsupportedRegime&) {
        }
    }
    if (seeds.empty()) {
        TwoCutSolution none;
        none.residual_norm = INFINITY;
        none.message = "no positive well to seed the two-cut solve";
        return none;
    }

    detail::Residual2 F = [&](const detail::Vec2& a) -> std::optional<detail::Vec2> {
        if (!(0.0 < a[1] && a[1] < a[0]) || a[0] - a[1] < 1e-12 * std::max(1.0, a[0])) return std::nullopt;
        try {
            const auto [f1, f2] = residual(lf, a[0], a[1]);
            if (!std::isfinite(f1) || !std::isfinite(f2)) return std::nullopt;
            return detail::Vec2{f1, f2};
        } catch (const NegativeRadicand&) {
            return std::nullopt;
        }
    };
    auto step = [](const detail::Vec2& a) { return 1e-6 * (a[0] - a[1]); };

    TwoCutSolution best;
    best.residual_norm = INFINITY;
    for (const auto& s : seeds) {
        const auto r = detail::damped_newton(F, s, opts.tol, opts.max_iter, opts.max_halvings, step);
        if (r.norm < best.residual_norm || best.message.empty()) {
            best.u1 = r.x[0];
            best.u2 = r.x[1];
            best.residual_norm = r.norm;
            best.iterations = r.iterations;
            best.converged = r.converged;
            best.message = r.message;
        }
        if (r.converged) break;
    }
    best.u1_ext = best.u1;
    best.u2_ext = best.u2;
    if (best.converged && lf.is_polynomial()) polish(lf, best);
    return best;
}

double psi(const TwoCutSolution& sol, const FieldSpec& field, double xi) {
    const double a = std::abs(xi);
    if (!(a > sol.u2 && a < sol.u1)) return 0.0;
    return right_band_psi(LocalField(field, 0.0), a, sol.u1, sol.u2);
}

DensityTable density_symmetric(TwoCutSolution& sol, const FieldSpec& field, int grid_n) {
    if (!sol.converged) throw DomainError("density requires a converged solution");
    if (grid_n < 3) throw DomainError("grid_n must be at least 3");
    const LocalField lf(field, 0.0);
    const double u1 = sol.u1, u2 = sol.u2;
    const double mid = 0.5 * (u1 + u2), half = 0.5 * (u1 - u2);

    Band right;
    right.lo = u2;
    right.hi = u1;
    right.chebyshev = true;
    right.x.resize(static_cast<std::size_t>(grid_n));
    right.psi.resize(static_cast<std::size_t>(grid_n));
    double peak = 0.0;
    for (int j = 0; j < grid_n; ++j) {
        const std::size_t i = static_cast<std::size_t>(grid_n - 1 - j);
        const double x = (j == 0) ? u1 : (j == grid_n - 1) ? u2 : (2 * j == grid_n - 1 ? mid : mid + half * std::cos(pi * j / (grid_n - 1)));
        right.x[i] = x;
        right.psi[i] = (j == 0 || j == grid_n - 1) ? 0.0 : right_band_psi(lf, x, u1, u2);
        peak = std::max(peak, right.psi[i]);
    }
    for (double& p : right.psi) {
        if (p < -1e-6 * std::max(1.0, peak)) throw NegativeDensity("two-cut density is negative inside the support");
        if (p < 0.0) p = 0.0;
    }
    Band left;
    left.lo = -u1;
    left.hi = -u2;
    left.chebyshev = true;
    for (std::size_t i = right.x.size(); i-- > 0;) {
        left.x.push_back(-right.x[i]);
        left.psi.push_back(right.psi[i]);
    }
    left.prepare();
    right.prepare();

    DensityTable table;
    table.origin = 0.0;
    table.bands.push_back(std::move(left));
    table.bands.push_back(std::move(right));
    table.lagrange_l = quad::log_kernel_integral(table, mid) - lf.value(mid);
    sol.lagrange_l = table.lagrange_l - field.value(0.0);
    return table;
}

}  // namespace eqm::twocut
