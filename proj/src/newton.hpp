#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>

namespace eqm::detail {

using Vec2 = std::array<double, 2>;

struct NewtonResult {
    Vec2 x{};
    double norm = INFINITY;
    int iterations = 0;
    bool converged = false;
    std::string message;
};

/// Residual evaluation returns nullopt when x leaves the domain of definition
/// (negative radicand, endpoint ordering); the line search halves the step.
using Residual2 = std::function<std::optional<Vec2>(const Vec2&)>;

inline double norm2(const Vec2& v) { return std::hypot(v[0], v[1]); }

inline NewtonResult damped_newton(const Residual2& F, Vec2 x, double tol, int max_iter, int max_halvings,
                                  const std::function<double(const Vec2&)>& fd_step) {
    NewtonResult res;
    auto f0 = F(x);
    if (!f0) {
        res.x = x;
        res.message = "initial guess outside the domain of the endpoint equations";
        return res;
    }
    Vec2 f = *f0;
    double nf = norm2(f);
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it;
        if (nf < tol) break;
        const double h = fd_step(x);
        double J[2][2];
        bool ok = true;
        for (int j = 0; j < 2 && ok; ++j) {
            Vec2 xp = x, xm = x;
            xp[static_cast<std::size_t>(j)] += h;
            xm[static_cast<std::size_t>(j)] -= h;
            auto fp = F(xp), fm = F(xm);
            if (!fp || !fm) {
                // one-sided difference at the edge of the domain
                if (fp) {
                    for (int i = 0; i < 2; ++i) J[i][j] = ((*fp)[static_cast<std::size_t>(i)] - f[static_cast<std::size_t>(i)]) / h;
                } else if (fm) {
                    for (int i = 0; i < 2; ++i) J[i][j] = (f[static_cast<std::size_t>(i)] - (*fm)[static_cast<std::size_t>(i)]) / h;
                } else {
                    ok = false;
                }
                continue;
            }
            for (int i = 0; i < 2; ++i)
                J[i][j] = ((*fp)[static_cast<std::size_t>(i)] - (*fm)[static_cast<std::size_t>(i)]) / (2 * h);
        }
        if (!ok) {
            res.message = "Jacobian could not be evaluated";
            break;
        }
        const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
        if (det == 0.0 || !std::isfinite(det)) {
            res.message = "singular Jacobian";
            break;
        }
        const Vec2 dx{-(J[1][1] * f[0] - J[0][1] * f[1]) / det, -(-J[1][0] * f[0] + J[0][0] * f[1]) / det};
        double lam = 1.0;
        bool accepted = false;
        for (int hlv = 0; hlv <= max_halvings; ++hlv, lam *= 0.5) {
            const Vec2 xn{x[0] + lam * dx[0], x[1] + lam * dx[1]};
            auto fn = F(xn);
            if (fn && norm2(*fn) < nf) {
                x = xn;
                f = *fn;
                nf = norm2(f);
                accepted = true;
                break;
            }
        }
        res.iterations = it + 1;
        if (!accepted) {
            res.message = "line search failed to reduce the residual";
            break;
        }
    }
    res.x = x;
    res.norm = nf;
    res.converged = nf < tol;
    if (res.converged)
        res.message = "converged";
    else if (res.message.empty())
        res.message = "iteration limit reached";
    return res;
}

}  // namespace eqm::detail
