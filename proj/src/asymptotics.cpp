#include "eqm/asymptotics.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "eqm/errors.hpp"
#include "eqm/format.hpp"
#include "eqm/landscape.hpp"
#include "eqm/pipeline.hpp"

namespace eqm::asymptotics {

namespace {

struct Dominant {
    double M = 0.0;
    double C = 0.0;
};

// Leading V* term as ξ → s·∞, written C·|ξ|^M.
Dominant dominant_vstar(const FieldSpec& field, int s) {
    std::map<double, double> lead;
    for (const auto& term : field.vstar()) {
        double c = term.coefficient;
        if (term.kind == TermKind::monomial && s < 0 && static_cast<int>(term.exponent) % 2 == 1) c = -c;
        lead[term.exponent] += c;
    }
    for (auto it = lead.rbegin(); it != lead.rend(); ++it)
        if (it->second != 0.0) return {it->first, it->second};
    return {};
}

bool p_is_convex(const std::vector<double>& p) {
    double B = 1.0;
    for (std::size_t j = 0; j + 1 < p.size(); ++j) B = std::max(B, 1.0 + std::abs(p[j]));
    B = 2.0 * B + 10.0;
    constexpr int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double x = -B + 2.0 * B * i / n;
        double d2 = 0.0, xp = 1.0;
        for (std::size_t j = 2; j < p.size(); ++j) {
            d2 += static_cast<double>(j * (j - 1)) * p[j] * xp;
            xp *= x;
        }
        if (d2 < -1e-12) return false;
    }
    return p.back() > 0.0;
}

}  // namespace

bool wells_inside(const FieldSpec& field, const std::vector<double>& endpoints, bool all_minima) {
    std::vector<double> wells;
    if (all_minima) {
        for (const auto& m : local_minima(field)) wells.push_back(m.x);
    } else {
        wells.push_back(global_minimum(field).x);
    }
    for (double w : wells) {
        bool in = false;
        for (std::size_t i = 0; i + 1 < endpoints.size(); i += 2)
            in = in || (w <= endpoints[i] && w >= endpoints[i + 1]);
        if (!in) return false;
    }
    return true;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::odd_n_neg_t: return "odd-n-neg-t";
        case Regime::odd_n_pos_t: return "odd-n-pos-t";
        case Regime::even_n_neg_t: return "even-n-neg-t";
        case Regime::even_n_pos_t_convex: return "even-n-pos-t-convex";
    }
    return "unknown";
}

double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

AsymptoticPrediction predict(const FieldSpec& field, int sign_of_t) {
    if (sign_of_t != 1 && sign_of_t != -1) throw DomainError("sign must be +1 or -1");
    const auto& p = field.p_coeffs();
    const int n = field.degree_p();
    if (n < 1) throw UnsupportedRegime("p must be non-constant");
    AsymptoticPrediction out;
    out.n = n;

    auto power_law = [&](int side) {
        const Dominant d = dominant_vstar(field, side);
        if (!(d.C > 0.0) || !(d.M > n))
            throw UnsupportedRegime("V* must dominate t·p at infinity with a positive leading coefficient");
        out.M = d.M;
        out.C = d.C;
        out.scaling_exponent = 1.0 / (d.M - n);
        out.limit_constant = std::pow(n / (d.C * d.M), out.scaling_exponent);
        out.side = side;
    };

    if (n % 2 == 1) {
        out.regime = sign_of_t < 0 ? Regime::odd_n_neg_t : Regime::odd_n_pos_t;
        power_law(sign_of_t < 0 ? 1 : -1);
    } else if (sign_of_t < 0) {
        out.regime = Regime::even_n_neg_t;
        const Dominant a = dominant_vstar(field, 1), b = dominant_vstar(field, -1);
        if (a.M != b.M || a.C != b.C) throw UnsupportedRegime("dominant V* term must be even for even n and t < 0");
        power_law(1);
        out.side = 0;
    } else {
        if (!p_is_convex(p)) throw UnsupportedRegime("p is not convex; no limiting constant for t > 0");
        std::size_t m = 1;
        while (m < p.size() && p[m] == 0.0) ++m;
        if (m % 2 == 1 || !(p[m] > 0.0))
            throw UnsupportedRegime("lowest-order term of p must be even with a positive coefficient");
        const int mi = static_cast<int>(m);
        out.regime = Regime::even_n_pos_t_convex;
        out.scaling_exponent = -1.0 / mi;
        out.limit_constant = std::pow(double_factorial(mi - 2) / (std::numbers::pi * double_factorial(mi - 1)), 1.0 / mi) *
                             std::pow(p[m], -1.0 / mi);
        out.side = 0;
        out.M = 0.0;
        out.C = 0.0;
    }
    const double tmag = field.t() != 0.0 ? std::abs(field.t()) : 1.0;
    out.well_location = global_minimum(field.with_t(sign_of_t * tmag)).x;
    return out;
}

std::pair<double, double> predicted_endpoints(const AsymptoticPrediction& p, double t) {
    const double s = p.limit_constant * std::pow(std::abs(t), p.scaling_exponent);
    switch (p.regime) {
        case Regime::odd_n_neg_t:
        case Regime::odd_n_pos_t: return p.side < 0 ? std::pair{-s, -s} : std::pair{s, s};
        case Regime::even_n_neg_t: return {s, s};
        case Regime::even_n_pos_t_convex: return {s, -s};
    }
    return {s, s};
}

std::optional<std::pair<double, double>> seed_endpoints(const FieldSpec& field, int g) {
    if (field.t() == 0.0) return std::nullopt;
    const auto pred = predict(field, field.t() < 0 ? -1 : 1);
    const auto [a, b] = predicted_endpoints(pred, field.t());
    const double delta = 0.05 * std::abs(a);
    if (g == 1) {
        if (pred.regime != Regime::even_n_neg_t) return std::nullopt;
        return std::pair{a + delta, a - delta};
    }
    if (pred.regime == Regime::even_n_neg_t) return std::nullopt;
    if (pred.regime == Regime::even_n_pos_t_convex) return std::pair{a, b};
    return std::pair{a + delta, a - delta};
}

}  // namespace eqm::asymptotics

namespace eqm::asymptotics {

std::vector<StudyRow> scaling_study(const FieldSpec& field, int sign_of_t, int decades) {
    if (decades < 3) throw DomainError("scaling_study requires at least 3 decades");
    const auto pred = predict(field, sign_of_t);
    const auto ansatz = pred.regime == Regime::even_n_neg_t ? pipeline::Ansatz::twocut_sym : pipeline::Ansatz::onecut;
    std::vector<StudyRow> rows;
    for (int k = 1; k <= decades; ++k) {
        StudyRow row;
        row.t = sign_of_t * std::pow(10.0, k);
        const FieldSpec f = field.with_t(row.t);
        try {
            const auto r = pipeline::solve_with(f, ansatz);
            row.solved = true;
            row.ansatz = pipeline::ansatz_name(r.ansatz);
            row.endpoints = r.endpoints;
            const double scale = std::pow(std::abs(row.t), pred.scaling_exponent);
            row.scaled_u1 = r.endpoints[0] / scale;
            row.scaled_u2 = r.endpoints[1] / scale;
            const auto [p1, p2] = predicted_endpoints(pred, 1.0);
            row.deviation = std::max(std::abs(row.scaled_u1 - p1), std::abs(row.scaled_u2 - p2)) / pred.limit_constant;
            row.width = r.endpoints[0] - r.endpoints[1];
            row.verified = r.verified;
            row.gaps = r.verified ? r.gaps() : -1;
            row.well_inside = wells_inside(f, r.endpoints, ansatz == pipeline::Ansatz::twocut_sym);
        } catch (const Error& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

bool deviations_monotone(const std::vector<StudyRow>& rows) {
    for (std::size_t i = 2; i < rows.size(); ++i)
        if (!rows[i].solved || !rows[i - 1].solved || rows[i].deviation > rows[i - 1].deviation) return false;
    return true;
}

std::string study_csv(const std::vector<StudyRow>& rows) {
    std::string out = "t,u1,u2,u3,u4,scaled_u1,scaled_u2,deviation,width,gaps,well_inside\n";
    for (const auto& r : rows) {
        out += format_number(r.t);
        for (std::size_t i = 0; i < 4; ++i) {
            out += ',';
            if (i < r.endpoints.size()) out += format_number(r.endpoints[i]);
        }
        if (r.solved) {
            out += ',' + format_number(r.scaled_u1) + ',' + format_number(r.scaled_u2) + ',' + format_number(r.deviation) +
                   ',' + format_number(r.width) + ',' + std::to_string(r.gaps) + ',' + (r.well_inside ? "true" : "false");
        } else {
            out += ",,,,,,false";
        }
        out += '\n';
    }
    return out;
}

}  // namespace eqm::asymptotics
