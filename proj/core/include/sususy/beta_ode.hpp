#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sususy/interp.hpp"
#include "sususy/operators.hpp"
#include "sususy/scan_config.hpp"

namespace sususy {

struct InitialPoint {
    double beta0;
    double dbeta0;
};

enum class SolutionStatus { Regular, Singular };
enum class Side { Left, Right };

struct BetaSample {
    double x;
    double beta;
    double dbeta;
};

/// Numeric solution of the oscillator-case beta equation: accepted
/// integration steps over [-x_max, x_max] (two sweeps from x = 0, merged in
/// ascending x), plus the termination verdict.
struct BetaSolution {
    std::vector<BetaSample> samples;
    SolutionStatus status = SolutionStatus::Regular;
    double x_sing = 0.0;  // meaningful only when Singular
    Side sing_side = Side::Right;
    std::uint64_t config_fingerprint = 0;

    bool regular() const { return status == SolutionStatus::Regular; }
    Interval covered() const { return {samples.front().x, samples.back().x}; }
};

/// Left side of the oscillator-case beta equation,
///   beta beta'' - beta'^2/2 - 2 beta^2 beta' + beta^4/2
///   - 4 beta^2 - 2 x^2 beta^2 + 2,
/// grouped so the -2x ladder solution evaluates to exactly zero.
double beta_equation_lhs(double x, double beta, double dbeta, double d2beta);

/// beta'' solved from the equation above. Throws std::domain_error when
/// |beta| < beta_floor; callers treat that as a singularity signal.
double rhs(double x, double beta, double dbeta, double beta_floor = kBetaFloor);

/// Non-throwing variant for the integrator hot path.
std::optional<double> rhs_checked(double x, double beta, double dbeta,
                                  double beta_floor) noexcept;

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) on the first-order
/// system (beta, beta'), swept 0 -> x_max and 0 -> -x_max. A sweep ends
/// Singular when the beta floor, the beta' blow-up cap, or the step floor
/// trips; status is Regular only when both sweeps complete.
BetaSolution integrate(InitialPoint p, const ScanConfig& cfg);

inline constexpr double kLambdaMin = 0.88622692545275801365;  // sqrt(pi)/2

/// Closed-form particular solution
///   beta_p(x) = -2x - exp(-x^2) / (lambda + integral_0^x exp(-y^2) dy)
/// with analytic first and second derivatives. Requires |lambda| >
/// sqrt(pi)/2 so the denominator cannot vanish.
BetaEval beta_particular(double lambda, double x);

/// The initial-condition curve beta'(0) = -2 + beta(0)^2 traced by the
/// particular solutions; defined for |beta(0)| < 2/sqrt(pi).
double initial_curve(double beta0);

/// beta_particular as a provider over the whole line.
class ParticularBeta final : public BetaProvider {
  public:
    explicit ParticularBeta(double lambda);
    BetaEval eval(double x) const override { return beta_particular(lambda_, x); }
    Interval domain() const override { return {-12.0, 12.0}; }
    BetaKind kind() const override { return BetaKind::ClosedForm; }
    double lambda() const { return lambda_; }
    InitialPoint initial_point() const;

  private:
    double lambda_;
};

/// Dense view of a Regular BetaSolution: C^2 quintic Hermite interpolation
/// of beta and beta', with second-derivative node data supplied by the
/// equation itself (beta'' from the right side, beta''' from its
/// x-derivative along the trajectory). C^2 matters: downstream finite
/// differences would amplify the curvature jumps of a C^1 interpolant.
class SolutionBeta final : public BetaProvider {
  public:
    explicit SolutionBeta(const BetaSolution& sol);  // requires Regular status
    BetaEval eval(double x) const override;
    Interval domain() const override { return {beta_.x_front(), beta_.x_back()}; }
    BetaKind kind() const override { return BetaKind::Interpolated; }

  private:
    QuinticHermiteSpline beta_, dbeta_;
};

/// Sup-norm of the equation's left side over a uniform probe grid, using
/// spline-differentiated beta'' (independent of the rhs used to produce the
/// solution). Certifies that an integrated trajectory solves the equation.
double beta_equation_residual(const BetaSolution& sol, int probe_points = 2001);

/// Oscillator-case potential triple on an arbitrary grid, built without
/// dividing by beta: V = x^2, Vtilde = x^2 + 2 beta', and gamma recovered
/// from the algebraic constraint with (c, delta) = (1, 4). Valid for any
/// beta that solves the oscillator-case equation.
PotentialTriple oscillator_triple(const BetaProvider& beta, std::span<const double> grid,
                                  std::string provenance = {});

}  // namespace sususy
