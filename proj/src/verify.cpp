#include "eqm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eqm/epd.hpp"
#include "eqm/errors.hpp"
#include "eqm/landscape.hpp"
#include "eqm/quadrature.hpp"

namespace eqm::verify {

namespace {

constexpr double pi = std::numbers::pi;

rhp::EndpointVector support_endpoints(const DensityTable& d) {
    std::vector<double> u;
    for (auto it = d.bands.rbegin(); it != d.bands.rend(); ++it) {
        u.push_back(it->hi);
        u.push_back(it->lo);
    }
    return rhp::EndpointVector(static_cast<int>(d.bands.size()) - 1, u);
}

bool on_support(const DensityTable& d, double x) {
    for (const auto& b : d.bands)
        if (x >= b.lo && x <= b.hi) return true;
    return false;
}

// ∫_e^ξ f over successive panels; the first panel uses μ = e + L s² to absorb
// the square-root edge.
class Cumulative {
public:
    Cumulative(std::function<double(double)> f, double edge) : f_(std::move(f)), edge_(edge), last_(edge) {}

    double advance(double xi) {
        const auto& gl = quad::gauss_legendre(24);
        if (last_ == edge_) {
            const double L = xi - edge_;
            double s = 0.0;
            for (std::size_t i = 0; i < gl.size(); ++i) {
                const double t = 0.5 * (1.0 + gl.nodes[i]);
                s += 0.5 * gl.weights[i] * f_(edge_ + L * t * t) * 2.0 * L * t;
            }
            total_ += s;
        } else {
            total_ += quad::legendre_integral(f_, last_, xi, 24);
        }
        last_ = xi;
        return total_;
    }

private:
    std::function<double(double)> f_;
    double edge_, last_, total_ = 0.0;
};

}  // namespace

bool VariationalReport::passed(const Tolerances& tol) const {
    return equality_deviation < tol.eq && inequality_margin > -tol.ineq && std::abs(mass_residual) < tol.mass &&
           constraint_sign_ok && gap_integral_ok;
}

double effective_potential(const DensityTable& density, const FieldSpec& field, double xi) {
    const LocalField lf(field, density.origin);
    const double x = xi - density.origin;
    return quad::log_kernel_integral(density, x) - lf.value(x);
}

VariationalReport check_variational(const DensityTable& density, const FieldSpec& field, int probe_n,
                                    const Tolerances&) {
    if (density.bands.empty()) throw DomainError("density has no support");
    const LocalField lf(field, density.origin);
    auto eff = [&](double x) { return quad::log_kernel_integral(density, x) - lf.value(x); };
    VariationalReport r;

    std::vector<double> on;
    for (const auto& b : density.bands)
        for (double x : b.x) on.push_back(eff(x));
    double sum = 0.0;
    for (double e : on) sum += e;
    r.lagrange_mean = sum / static_cast<double>(on.size());
    const double l = std::isfinite(density.lagrange_l) ? density.lagrange_l : r.lagrange_mean;
    for (double e : on) r.equality_deviation = std::max(r.equality_deviation, std::abs(e - l));

    const double lo = density.bands.front().lo, hi = density.bands.back().hi;
    const double delta = hi - lo;
    std::vector<double> probes;
    for (int i = 0; i < probe_n; ++i) {
        const double x = lo - 2.0 * delta + 5.0 * delta * (i + 0.5) / probe_n;
        if (!on_support(density, x)) probes.push_back(x);
    }
    for (const auto& m : local_minima(field)) {
        const double x = m.x - density.origin;
        if (!on_support(density, x)) probes.push_back(x);
    }
    const double umax = std::max({std::abs(lo + density.origin), std::abs(hi + density.origin), delta});
    std::vector<double> far;
    for (double k : {10.0, 100.0})
        for (double s : {1.0, -1.0}) far.push_back(s * k * umax - density.origin);
    for (double x : far)
        if (!on_support(density, x)) probes.push_back(x);
    r.inequality_margin = std::numeric_limits<double>::infinity();
    for (double x : probes) r.inequality_margin = std::min(r.inequality_margin, l - eff(x));

    double centre = 0.0, mass = 0.0;
    for (const auto& b : density.bands)
        for (std::size_t j = 0; j + 1 < b.x.size(); ++j) {
            const double w = 0.5 * (b.psi[j] + b.psi[j + 1]) * (b.x[j + 1] - b.x[j]);
            centre += w * 0.5 * (b.x[j] + b.x[j + 1]);
            mass += w;
        }
    centre = mass > 0.0 ? centre / mass : 0.5 * (lo + hi);
    for (double s : {1.0, -1.0}) {
        const double x = centre + s * 100.0 * std::max(umax, 1.0);
        r.far_field_error = std::max(r.far_field_error, std::abs(quad::log_kernel_integral(density, x) -
                                                                 std::log(std::abs(x - centre)) / pi));
    }

    r.mass_residual = density.mass() - 1.0;
    r.gaps = static_cast<int>(density.bands.size()) - 1;
    return r;
}

SignGapReport check_sign_and_gaps(const rhp::EndpointVector& u, const LocalField& field) {
    const int g = u.g();
    if (g > 1) throw DomainError("sign and gap checks support g <= 1");
    const epd::EpdSpec spec{g, epd::Kind::phi, field};
    auto phi = [&](double x) { return epd::phi_eval(spec, x, u.u()); };
    SignGapReport rep;
    rep.min_band_sign = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= u.bands(); ++k) {
        const double a = u.band_lo(k), b = u.band_hi(k);
        for (int i = 0; i < 50; ++i) {
            const double x = a + (b - a) * (i + 0.5) / 50.0;
            rep.min_band_sign = std::min(rep.min_band_sign, rhp::EndpointVector::sigma(k) * phi(x));
        }
    }
    rep.constraint_sign_ok = rep.min_band_sign > 0.0;

    auto integrand = [&](double x) { return u.R_real(x) * phi(x); };
    rep.min_integral = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (int k = 1; k <= g; ++k) {
        const double e = u[static_cast<std::size_t>(2 * k)], top = u[static_cast<std::size_t>(2 * k - 1)];
        Cumulative c(integrand, e);
        for (int j = 1; j <= 20; ++j) {
            const double v = c.advance(e + (top - e) * j / 21.0);
            rep.min_integral = std::min(rep.min_integral, v);
            ok = ok && v > 0.0;
        }
    }
    const double width = u[0] - u[u.size() - 1];
    const double B = critical_point_bound(field.spec());
    for (int dir : {1, -1}) {
        const double e = dir > 0 ? u[0] : u[u.size() - 1];
        const double reach = std::max(2.0 * width, dir * (dir * B - field.origin() - e) + width);
        Cumulative c(integrand, e);
        for (int j = 1; j <= 20; ++j) {
            const double s = j / 20.0;
            const double v = c.advance(e + dir * reach * s * s);
            rep.min_integral = std::min(rep.min_integral, v);
            ok = ok && v > 0.0;
        }
        // Tail: the integrand keeps the sign that increases the integral.
        for (int k = 1; k <= 10; ++k) ok = ok && dir * integrand(e + dir * reach * std::ldexp(1.0, k)) > 0.0;
    }
    rep.gap_integral_ok = ok;
    return rep;
}

VariationalReport certify(const DensityTable& density, const FieldSpec& field, int probe_n, const Tolerances& tol) {
    auto r = check_variational(density, field, probe_n, tol);
    const auto u = support_endpoints(density);
    if (u.g() <= 1) {
        const auto sg = check_sign_and_gaps(u, LocalField(field, density.origin));
        r.constraint_sign_ok = sg.constraint_sign_ok;
        r.gap_integral_ok = sg.gap_integral_ok;
    } else {
        r.constraint_sign_ok = false;
        r.gap_integral_ok = false;
    }
    return r;
}

nlohmann::json to_json(const VariationalReport& r) {
    return {{"equality_deviation", r.equality_deviation},
            {"inequality_margin", r.inequality_margin},
            {"mass_residual", r.mass_residual},
            {"constraint_sign_ok", r.constraint_sign_ok},
            {"gap_integral_ok", r.gap_integral_ok},
            {"lagrange_mean", r.lagrange_mean},
            {"far_field_error", r.far_field_error},
            {"gaps", r.gaps},
            {"passed", r.passed()}};
}

}  // namespace eqm::verify
