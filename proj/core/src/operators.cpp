#include "sususy/operators.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sususy/interp.hpp"

namespace sususy {

namespace {

std::string format_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

BetaEval checked_eval(const BetaProvider& beta, double x) {
    BetaEval e = beta.eval(x);
    if (std::abs(e.beta) < kBetaFloor)
        throw std::domain_error("beta(x) below division floor at x = " + format_label(x));
    return e;
}

}  // namespace

double potential_from_beta(const BetaProvider& beta, ShiftConstants k, double x) {
    const BetaEval e = checked_eval(beta, x);
    const double half_log_slope = e.dbeta / (2.0 * e.beta);
    return e.d2beta / (2.0 * e.beta) - half_log_slope * half_log_slope - e.dbeta +
           0.25 * e.beta * e.beta + k.c / (e.beta * e.beta) - 0.5 * k.delta;
}

double partner_potential_from_beta(const BetaProvider& beta, ShiftConstants k, double x) {
    const BetaEval e = checked_eval(beta, x);
    const double half_log_slope = e.dbeta / (2.0 * e.beta);
    return e.d2beta / (2.0 * e.beta) - half_log_slope * half_log_slope + e.dbeta +
           0.25 * e.beta * e.beta + k.c / (e.beta * e.beta) - 0.5 * k.delta;
}

double gamma_from_beta(const BetaProvider& beta, ShiftConstants k, double x) {
    const BetaEval e = checked_eval(beta, x);
    const double half_log_slope = e.dbeta / (2.0 * e.beta);
    return -e.d2beta / (2.0 * e.beta) + half_log_slope * half_log_slope + 0.5 * e.dbeta +
           0.25 * e.beta * e.beta - k.c / (e.beta * e.beta);
}

PotentialTriple build_triple(const BetaProvider& beta, ShiftConstants k,
                             std::span<const double> grid, std::string provenance) {
    PotentialTriple t;
    t.constants = k;
    t.provenance = std::move(provenance);
    t.x.assign(grid.begin(), grid.end());
    t.v.reserve(grid.size());
    t.v_tilde.reserve(grid.size());
    t.gamma.reserve(grid.size());
    for (double x : grid) {
        t.v.push_back(potential_from_beta(beta, k, x));
        t.v_tilde.push_back(partner_potential_from_beta(beta, k, x));
        t.gamma.push_back(gamma_from_beta(beta, k, x));
    }
    return t;
}

TestFunction TestFunction::gaussian(double width, double center) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "gaussian(w=%g,x0=%g)", width, center);
    return TestFunction(buf, [width, center](double x) {
        const double t = (x - center) / width;
        return std::exp(-0.5 * t * t);
    });
}

TestFunction TestFunction::hermite_gaussian(int order, double width) {
    if (order < 0) throw std::invalid_argument("hermite_gaussian: order must be >= 0");
    char buf[64];
    std::snprintf(buf, sizeof buf, "hermite_gaussian(n=%d,w=%g)", order, width);
    return TestFunction(buf, [order, width](double x) {
        const double t = x / width;
        double h0 = 1.0, h1 = 2.0 * t;
        if (order == 0) return std::exp(-0.5 * t * t);
        for (int n = 1; n < order; ++n) {
            const double h2 = 2.0 * t * h1 - 2.0 * n * h0;
            h0 = h1;
            h1 = h2;
        }
        return h1 * std::exp(-0.5 * t * t);
    });
}

bool TestFunction::decays_on(Interval window, int n, double rel_floor) const {
    double max_abs = 0.0;
    const double h = window.length() / (n - 1);
    for (int i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(f_(window.lo + i * h)));
    if (max_abs == 0.0) return false;
    return std::abs(f_(window.lo)) <= rel_floor * max_abs &&
           std::abs(f_(window.hi)) <= rel_floor * max_abs;
}

namespace {

// Centered 3-point stencils on a possibly non-uniform grid (reduce to the
// classic h^2 formulas for uniform spacing). Defined on interior points only.
double d1_centered(const std::vector<double>& x, const std::vector<double>& f, std::size_t i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    return (f[i + 1] * hm * hm - f[i - 1] * hp * hp + f[i] * (hp * hp - hm * hm)) /
           (hp * hm * (hp + hm));
}

double d2_centered(const std::vector<double>& x, const std::vector<double>& f, std::size_t i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    return 2.0 * (f[i + 1] * hm + f[i - 1] * hp - f[i] * (hp + hm)) / (hp * hm * (hp + hm));
}

struct OperatorGrid {
    std::vector<double> x, v, v_tilde, gamma, beta, dbeta, psi;
    double h;
};

// Resolve triple samples onto the uniform residual grid; pass through when
// the grids already coincide, otherwise resample with cubic splines.
OperatorGrid prepare_grid(const PotentialTriple& triple, const BetaProvider& beta,
                          const TestFunction& psi, Interval window, int n) {
    if (n < 8) throw std::invalid_argument("operator residual grid too small");
    if (triple.x.size() < 2) throw std::invalid_argument("potential triple has no samples");
    OperatorGrid g;
    g.h = window.length() / (n - 1);
    g.x.resize(n);
    for (int i = 0; i < n; ++i) g.x[i] = window.lo + i * g.h;

    bool same = static_cast<int>(triple.x.size()) == n;
    if (same) {
        for (int i = 0; i < n && same; ++i) same = std::abs(triple.x[i] - g.x[i]) < 1e-12;
    }
    if (same) {
        g.v = triple.v;
        g.v_tilde = triple.v_tilde;
        g.gamma = triple.gamma;
    } else {
        const CubicSpline sv(triple.x, triple.v);
        const CubicSpline svt(triple.x, triple.v_tilde);
        const CubicSpline sg(triple.x, triple.gamma);
        g.v.resize(n);
        g.v_tilde.resize(n);
        g.gamma.resize(n);
        for (int i = 0; i < n; ++i) {
            g.v[i] = sv(g.x[i]);
            g.v_tilde[i] = svt(g.x[i]);
            g.gamma[i] = sg(g.x[i]);
        }
    }
    g.beta.resize(n);
    g.dbeta.resize(n);
    g.psi.resize(n);
    for (int i = 0; i < n; ++i) {
        const BetaEval e = beta.eval(g.x[i]);
        g.beta[i] = e.beta;
        g.dbeta[i] = e.dbeta;
        g.psi[i] = psi(g.x[i]);
    }
    return g;
}

// Grid passes with Dirichlet (zero) padding outside the window; the probe
// function is required to decay there.
std::vector<double> apply_d1(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double fm = i == 0 ? 0.0 : f[i - 1];
        const double fp = i + 1 == n ? 0.0 : f[i + 1];
        out[i] = (fp - fm) / (2.0 * h);
    }
    return out;
}

std::vector<double> apply_d2(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double fm = i == 0 ? 0.0 : f[i - 1];
        const double fp = i + 1 == n ? 0.0 : f[i + 1];
        out[i] = (fp - 2.0 * f[i] + fm) / (h * h);
    }
    return out;
}

double norm2(const std::vector<double>& f) {
    double s = 0.0;
    for (double v : f) s += v * v;
    return std::sqrt(s);
}

}  // namespace

ConstraintResiduals constraint_residuals(const PotentialTriple& triple,
                                         const BetaProvider& beta, ShiftConstants k) {
    const std::size_t n = triple.x.size();
    if (n < 5) throw std::invalid_argument("constraint_residuals: grid too coarse (< 5 points)");
    if (triple.v.size() != n || triple.v_tilde.size() != n || triple.gamma.size() != n)
        throw std::invalid_argument("constraint_residuals: array lengths differ");

    ConstraintResiduals r{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const BetaEval e = beta.eval(triple.x[i]);
        const double shift = triple.v_tilde[i] - triple.v[i] - 2.0 * e.dbeta;
        const double algebraic = 2.0 * triple.v[i] + k.delta - e.beta * e.beta +
                                 2.0 * triple.gamma[i] + e.dbeta;
        r.partner_shift = std::max(r.partner_shift, std::abs(shift));
        r.algebraic = std::max(r.algebraic, std::abs(algebraic));
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const BetaEval e = beta.eval(triple.x[i]);
        const double v1 = d1_centered(triple.x, triple.v, i);
        const double v2 = d2_centered(triple.x, triple.v, i);
        const double g2 = d2_centered(triple.x, triple.gamma, i);
        const double diff = v2 + e.beta * v1 - 2.0 * triple.gamma[i] * e.dbeta + g2;
        r.differential = std::max(r.differential, std::abs(diff));
    }
    return r;
}

OperatorResidual intertwining_residual(const PotentialTriple& triple, const BetaProvider& beta,
                                       const TestFunction& psi, Interval window, int n) {
    const OperatorGrid g = prepare_grid(triple, beta, psi, window, n);

    // A+ psi = psi'' + beta psi' + gamma psi
    std::vector<double> apsi = apply_d2(g.psi, g.h);
    {
        const std::vector<double> d1 = apply_d1(g.psi, g.h);
        for (int i = 0; i < n; ++i) apsi[i] += g.beta[i] * d1[i] + g.gamma[i] * g.psi[i];
    }
    // Htilde (A+ psi)
    std::vector<double> lhs = apply_d2(apsi, g.h);
    for (int i = 0; i < n; ++i) lhs[i] = -lhs[i] + g.v_tilde[i] * apsi[i];

    // H psi, then A+ (H psi)
    std::vector<double> hpsi = apply_d2(g.psi, g.h);
    for (int i = 0; i < n; ++i) hpsi[i] = -hpsi[i] + g.v[i] * g.psi[i];
    std::vector<double> rhs = apply_d2(hpsi, g.h);
    {
        const std::vector<double> d1 = apply_d1(hpsi, g.h);
        for (int i = 0; i < n; ++i) rhs[i] += g.beta[i] * d1[i] + g.gamma[i] * hpsi[i];
    }

    std::vector<double> diff(n);
    for (int i = 0; i < n; ++i) diff[i] = lhs[i] - rhs[i];
    return {norm2(diff) / norm2(g.psi), psi.decays_on(window)};
}

OperatorResidual factorization_residual(const PotentialTriple& triple, const BetaProvider& beta,
                                        ShiftConstants k, const TestFunction& psi,
                                        Interval window, int n) {
    const OperatorGrid g = prepare_grid(triple, beta, psi, window, n);

    // A+ psi, then A (A+ psi) with A = d^2/dx^2 - beta d/dx + (gamma - beta')
    std::vector<double> apsi = apply_d2(g.psi, g.h);
    {
        const std::vector<double> d1 = apply_d1(g.psi, g.h);
        for (int i = 0; i < n; ++i) apsi[i] += g.beta[i] * d1[i] + g.gamma[i] * g.psi[i];
    }
    std::vector<double> lhs = apply_d2(apsi, g.h);
    {
        const std::vector<double> d1 = apply_d1(apsi, g.h);
        for (int i = 0; i < n; ++i)
            lhs[i] += -g.beta[i] * d1[i] + (g.gamma[i] - g.dbeta[i]) * apsi[i];
    }

    // ((H + delta/2)^2 - c) psi as two successive (H + delta/2) passes
    auto apply_shifted_h = [&](const std::vector<double>& f) {
        std::vector<double> out = apply_d2(f, g.h);
        for (int i = 0; i < n; ++i) out[i] = -out[i] + (g.v[i] + 0.5 * k.delta) * f[i];
        return out;
    };
    std::vector<double> rhs = apply_shifted_h(apply_shifted_h(g.psi));
    for (int i = 0; i < n; ++i) rhs[i] -= k.c * g.psi[i];

    std::vector<double> diff(n);
    for (int i = 0; i < n; ++i) diff[i] = lhs[i] - rhs[i];
    return {norm2(diff) / norm2(g.psi), psi.decays_on(window)};
}

}  // namespace sususy
