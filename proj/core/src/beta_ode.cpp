#include "sususy/beta_ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "sususy/special_functions.hpp"

namespace sususy {

double beta_equation_lhs(double x, double beta, double dbeta, double d2beta) {
    // grouped so the two pairs that cancel along the -2x ladder solution
    // ((beta^2/2, 2x^2) and (2 beta', -4)) are subtracted directly; that
    // solution then evaluates to exactly zero in floating point
    return beta * d2beta - (0.5 * dbeta * dbeta - 2.0) +
           beta * beta * ((0.5 * beta * beta - 2.0 * x * x) - (2.0 * dbeta + 4.0));
}

std::optional<double> rhs_checked(double x, double beta, double dbeta,
                                  double beta_floor) noexcept {
    if (std::abs(beta) < beta_floor) return std::nullopt;
    const double numer = (0.5 * dbeta * dbeta - 2.0) +
                         beta * beta * ((2.0 * dbeta + 4.0) - (0.5 * beta * beta - 2.0 * x * x));
    return numer / beta;
}

double rhs(double x, double beta, double dbeta, double beta_floor) {
    const auto r = rhs_checked(x, beta, dbeta, beta_floor);
    if (!r) throw std::domain_error("rhs: |beta| below the division floor");
    return *r;
}

namespace {

using State = std::array<double, 2>;  // (beta, beta')

// Dormand-Prince 5(4) tableau
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// difference between the 5th-order weights (row 7 of kA) and the embedded
// 4th-order weights; k7 carries weight -1/40
constexpr double kE[7] = {
    35.0 / 384 - 5179.0 / 57600, 0.0,           500.0 / 1113 - 7571.0 / 16695,
    125.0 / 192 - 393.0 / 640,   -2187.0 / 6784 + 92097.0 / 339200,
    11.0 / 84 - 187.0 / 2100,    -1.0 / 40,
};

struct SweepResult {
    std::vector<BetaSample> samples;  // in traversal order, start excluded
    bool singular = false;
    double x_sing = 0.0;
};

std::optional<State> eval_rhs(double x, const State& y, double beta_floor) {
    const auto d2 = rhs_checked(x, y[0], y[1], beta_floor);
    if (!d2) return std::nullopt;
    return State{y[1], *d2};
}

// Locate where |beta'| crosses the cap inside the accepted step, using the
// cubic Hermite of beta' over [x0, x1]. Keeps the reported x_sing stable
// under tolerance changes.
double locate_cap_crossing(double x0, double db0, double ddb0, double x1, double db1,
                           double ddb1, double cap) {
    const double h = x1 - x0;
    auto dbeta_at = [&](double t) {
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * db0 + (t3 - 2 * t2 + t) * h * ddb0 +
               (-2 * t3 + 3 * t2) * db1 + (t3 - t2) * h * ddb1;
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (std::abs(dbeta_at(mid)) > cap ? hi : lo) = mid;
    }
    return x0 + 0.5 * (lo + hi) * h;
}

SweepResult sweep(double x_start, State y, double x_end, const ScanConfig& cfg) {
    SweepResult out;
    const double dir = x_end > x_start ? 1.0 : -1.0;
    double x = x_start;
    double h = dir * std::min(cfg.max_step, 1e-2);

    auto flag_singular = [&](double where) {
        out.singular = true;
        out.x_sing = where;
    };

    State k[7];
    auto f0 = eval_rhs(x, y, cfg.beta_floor);
    if (!f0) {
        flag_singular(x);
        return out;
    }
    k[0] = *f0;

    while (true) {
        const double remaining = dir * (x_end - x);
        if (remaining <= cfg.step_floor) break;  // sweep complete
        // tighter cap near beta zero crossings: the solution's higher
        // derivatives peak there and downstream interpolants need the nodes
        const double local_cap =
            cfg.max_step * std::clamp(std::abs(y[0]) / 0.5, 1.0 / 32.0, 1.0);
        if (std::abs(h) > local_cap) h = dir * local_cap;
        if (std::abs(h) > remaining) h = x_end - x;
        if (std::abs(h) < cfg.step_floor) {
            flag_singular(x);  // error control collapsed the step
            return out;
        }

        bool stage_guard = false;
        double guard_x = x;
        State y_new{};
        for (int s = 1; s < 7; ++s) {
            State ys = y;
            for (int j = 0; j < s; ++j) {
                ys[0] += h * kA[s][j] * k[j][0];
                ys[1] += h * kA[s][j] * k[j][1];
            }
            const double xs = x + kC[s] * h;
            const auto fs = eval_rhs(xs, ys, cfg.beta_floor);
            if (!fs) {
                stage_guard = true;
                guard_x = xs;
                break;
            }
            k[s] = *fs;
            if (s == 6) y_new = ys;  // FSAL: stage 7 sits at the step end
        }
        if (stage_guard) {
            // try to resolve with a smaller step first; give up at the floor
            h *= 0.25;
            if (std::abs(h) < cfg.step_floor) {
                flag_singular(guard_x);
                return out;
            }
            continue;
        }

        double err = 0.0;
        for (int c = 0; c < 2; ++c) {
            double e = 0.0;
            for (int s = 0; s < 7; ++s) e += kE[s] * k[s][c];
            e *= h;
            const double scale =
                cfg.atol + cfg.rtol * std::max(std::abs(y[c]), std::abs(y_new[c]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(0.5 * err);

        if (err <= 1.0) {
            const double x_prev = x;
            const State y_prev = y;
            const State k_start = k[0];
            x += h;
            y = y_new;
            k[0] = k[6];  // FSAL
            out.samples.push_back({x, y[0], y[1]});

            if (std::abs(y[0]) < cfg.beta_floor) {
                flag_singular(x);
                return out;
            }
            if (std::abs(y[1]) > cfg.blowup_cap) {
                flag_singular(locate_cap_crossing(x_prev, y_prev[1], k_start[1], x, y[1],
                                                  k[0][1], cfg.blowup_cap));
                return out;
            }
        }

        const double factor =
            err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        h *= factor;
    }
    return out;
}

}  // namespace

BetaSolution integrate(InitialPoint p, const ScanConfig& cfg) {
    cfg.validate();

    BetaSolution sol;
    sol.config_fingerprint = cfg.fingerprint();

    constexpr double kSeriesStartOffset = 1e-4;
    constexpr double kSeriesNumeratorTol = 1e-9;

    const bool through_zero = std::abs(p.beta0) < cfg.beta_floor;
    if (through_zero) {
        // The right side is 0/0 on the beta = 0 axis. A solution passes
        // through only when the numerator vanishes as well (beta'(0) =
        // +-2); start such sweeps one Taylor step away with beta'' = 0.
        const double numer0 = 0.5 * p.dbeta0 * p.dbeta0 - 2.0 +
                              p.beta0 * p.beta0 *
                                  (2.0 * p.dbeta0 - 0.5 * p.beta0 * p.beta0 + 4.0);
        if (std::abs(numer0) > kSeriesNumeratorTol) {
            sol.status = SolutionStatus::Singular;
            sol.x_sing = 0.0;
            sol.sing_side = Side::Right;
            sol.samples.push_back({0.0, p.beta0, p.dbeta0});
            return sol;
        }
    }

    auto launch = [&](double dir) {
        if (!through_zero) return sweep(0.0, {p.beta0, p.dbeta0}, dir * cfg.x_max, cfg);
        const double x1 = dir * kSeriesStartOffset;
        const State y1{p.beta0 + x1 * p.dbeta0, p.dbeta0};
        SweepResult r = sweep(x1, y1, dir * cfg.x_max, cfg);
        r.samples.insert(r.samples.begin(), {x1, y1[0], y1[1]});
        return r;
    };

    SweepResult right = launch(+1.0);
    SweepResult left = launch(-1.0);

    sol.samples.reserve(left.samples.size() + right.samples.size() + 1);
    for (auto it = left.samples.rbegin(); it != left.samples.rend(); ++it)
        sol.samples.push_back(*it);
    if (!through_zero) sol.samples.push_back({0.0, p.beta0, p.dbeta0});
    for (const auto& s : right.samples) sol.samples.push_back(s);

    if (left.singular || right.singular) {
        sol.status = SolutionStatus::Singular;
        if (left.singular && right.singular) {
            // report the one closer to the origin
            if (std::abs(left.x_sing) < std::abs(right.x_sing)) {
                sol.x_sing = left.x_sing;
                sol.sing_side = Side::Left;
            } else {
                sol.x_sing = right.x_sing;
                sol.sing_side = Side::Right;
            }
        } else if (left.singular) {
            sol.x_sing = left.x_sing;
            sol.sing_side = Side::Left;
        } else {
            sol.x_sing = right.x_sing;
            sol.sing_side = Side::Right;
        }
    }
    return sol;
}

BetaEval beta_particular(double lambda, double x) {
    if (!(std::abs(lambda) > kLambdaMin))
        throw std::invalid_argument("beta_particular: |lambda| must exceed sqrt(pi)/2");
    const double g = std::exp(-x * x);
    const double u = g / (lambda + gaussian_integral(x));
    const double beta = -2.0 * x - u;
    const double dbeta = -2.0 + 2.0 * x * u + u * u;
    const double d2beta = 2.0 * u - 2.0 * u * (2.0 * x + u) * (x + u);
    return {beta, dbeta, d2beta};
}

double initial_curve(double beta0) {
    if (!(std::abs(beta0) < 2.0 / kSqrtPi))
        throw std::invalid_argument("initial_curve: |beta0| must be below 2/sqrt(pi)");
    return -2.0 + beta0 * beta0;
}

ParticularBeta::ParticularBeta(double lambda) : lambda_(lambda) {
    if (!(std::abs(lambda) > kLambdaMin))
        throw std::invalid_argument("ParticularBeta: |lambda| must exceed sqrt(pi)/2");
}

InitialPoint ParticularBeta::initial_point() const {
    return {-1.0 / lambda_, -2.0 + 1.0 / (lambda_ * lambda_)};
}

SolutionBeta::SolutionBeta(const BetaSolution& sol) {
    if (!sol.regular())
        throw std::invalid_argument("SolutionBeta: solution must be Regular");
    const std::size_t n = sol.samples.size();
    std::vector<double> xs(n), b(n), db(n), d2(n), d3(n);
    for (std::size_t i = 0; i < n; ++i) {
        const BetaSample& s = sol.samples[i];
        xs[i] = s.x;
        b[i] = s.beta;
        db[i] = s.dbeta;
        // node derivatives straight from the equation; the third derivative
        // comes out division-free after cancelling beta beta'' = N
        const double g = (2.0 * s.dbeta + 4.0) - (0.5 * s.beta * s.beta - 2.0 * s.x * s.x);
        const double numer = (0.5 * s.dbeta * s.dbeta - 2.0) + s.beta * s.beta * g;
        d2[i] = numer / s.beta;  // Regular solutions keep |beta| >= floor
        d3[i] = 4.0 * s.x * s.beta + s.dbeta * (2.0 * g - s.beta * s.beta) + 2.0 * numer;
    }
    beta_ = QuinticHermiteSpline(xs, b, db, d2);
    dbeta_ = QuinticHermiteSpline(xs, db, d2, d3);
}

BetaEval SolutionBeta::eval(double x) const {
    return {beta_(x), dbeta_(x), dbeta_.derivative(x)};
}

double beta_equation_residual(const BetaSolution& sol, int probe_points) {
    if (!sol.regular())
        throw std::invalid_argument("beta_equation_residual: solution must be Regular");
    if (probe_points < 2) throw std::invalid_argument("beta_equation_residual: need >= 2 probes");

    const std::size_t n = sol.samples.size();
    std::vector<double> xs(n), b(n), db(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = sol.samples[i].x;
        b[i] = sol.samples[i].beta;
        db[i] = sol.samples[i].dbeta;
    }
    // data-only interpolants: beta from its stored slopes, beta' as a
    // natural cubic spline whose derivative supplies beta''. Nothing here
    // assumes the equation, so the probe is an independent certificate.
    const HermiteSpline sb(xs, b, db);
    const CubicSpline sdb(xs, db);

    const Interval cov = sol.covered();
    double sup = 0.0;
    for (int i = 0; i < probe_points; ++i) {
        const double x = cov.lo + cov.length() * i / (probe_points - 1);
        sup = std::max(sup, std::abs(beta_equation_lhs(x, sb(x), sdb(x), sdb.derivative(x))));
    }
    return sup;
}

PotentialTriple oscillator_triple(const BetaProvider& beta, std::span<const double> grid,
                                  std::string provenance) {
    PotentialTriple t;
    t.constants = ShiftConstants::oscillator();
    t.provenance = std::move(provenance);
    t.x.assign(grid.begin(), grid.end());
    t.v.reserve(grid.size());
    t.v_tilde.reserve(grid.size());
    t.gamma.reserve(grid.size());
    for (double x : grid) {
        const BetaEval e = beta.eval(x);
        t.v.push_back(x * x);
        t.v_tilde.push_back(x * x + 2.0 * e.dbeta);
        t.gamma.push_back(0.5 * (e.beta * e.beta - e.dbeta - 2.0 * x * x - 4.0));
    }
    return t;
}

}  // namespace sususy
