#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sususy {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// (c, delta): the two integration constants that close the second-order
/// intertwining construction. The harmonic-oscillator case is pinned to
/// (1, 4); use oscillator() for it.
struct ShiftConstants {
    double c;
    double delta;
    static constexpr ShiftConstants oscillator() { return {1.0, 4.0}; }
};

enum class BetaKind { ClosedForm, Interpolated };

struct BetaEval {
    double beta;
    double dbeta;
    double d2beta;
};

/// Evaluation contract for the first-derivative coefficient beta(x) of the
/// second-order shift operator, together with its first two derivatives.
class BetaProvider {
  public:
    virtual ~BetaProvider() = default;
    virtual BetaEval eval(double x) const = 0;
    virtual Interval domain() const = 0;
    virtual BetaKind kind() const = 0;
};

/// beta(x) = slope * x. slope = -2 is the ladder-squared choice for the
/// oscillator.
class LinearBeta final : public BetaProvider {
  public:
    explicit LinearBeta(double slope = -2.0, Interval dom = {-12.0, 12.0})
        : slope_(slope), dom_(dom) {}
    BetaEval eval(double x) const override { return {slope_ * x, slope_, 0.0}; }
    Interval domain() const override { return dom_; }
    BetaKind kind() const override { return BetaKind::ClosedForm; }

  private:
    double slope_;
    Interval dom_;
};

/// Sampled base potential V, partner Vtilde and zeroth-order coefficient
/// gamma on a shared grid, plus the constants that generated them.
struct PotentialTriple {
    std::vector<double> x;
    std::vector<double> v;
    std::vector<double> v_tilde;
    std::vector<double> gamma;
    ShiftConstants constants{1.0, 4.0};
    std::string provenance;
};

/// Smooth rapidly decaying probe function for operator-identity checks.
class TestFunction {
  public:
    static TestFunction gaussian(double width = 1.0, double center = 0.0);
    static TestFunction hermite_gaussian(int order, double width = 1.0);

    double operator()(double x) const { return f_(x); }
    const std::string& label() const { return label_; }

    /// True when |psi| at both window ends is below `rel_floor` times its
    /// maximum over an n-point sampling, so discrete boundary terms are
    /// negligible.
    bool decays_on(Interval window, int n = 512, double rel_floor = 1e-8) const;

  private:
    TestFunction(std::string label, std::function<double(double)> f)
        : label_(std::move(label)), f_(std::move(f)) {}
    std::string label_;
    std::function<double(double)> f_;
};

/// Division guard for the closed forms below; they are genuinely singular
/// where beta vanishes.
inline constexpr double kBetaFloor = 1e-8;

// Closed forms for the potential pair and gamma in terms of beta and the
// shift constants. Throw std::domain_error when |beta(x)| < kBetaFloor.
double potential_from_beta(const BetaProvider& beta, ShiftConstants k, double x);
double partner_potential_from_beta(const BetaProvider& beta, ShiftConstants k, double x);
double gamma_from_beta(const BetaProvider& beta, ShiftConstants k, double x);

/// Evaluate the three closed forms on every grid point.
PotentialTriple build_triple(const BetaProvider& beta, ShiftConstants k,
                             std::span<const double> grid, std::string provenance = {});

/// Sup-norms over the grid of the three constraint relations tying
/// (V, Vtilde, gamma, beta) together:
///   partner_shift:  Vtilde - V - 2 beta'
///   algebraic:      2V + delta - beta^2 + 2 gamma + beta'
///   differential:   V'' + beta V' - 2 gamma beta' + gamma''
/// V', V'', gamma'' come from centered finite differences of the sampled
/// arrays (3-point second derivative, 2-point first derivative), so small
/// residuals certify internal consistency of the sampled triple.
struct ConstraintResiduals {
    double partner_shift;
    double algebraic;
    double differential;
};
ConstraintResiduals constraint_residuals(const PotentialTriple& triple,
                                         const BetaProvider& beta, ShiftConstants k);

/// Residual of an operator identity evaluated on a probe function, as a
/// discrete L2 norm normalized by ||psi||. `boundary_ok` is false when the
/// probe does not decay at the window ends and the value is unreliable.
struct OperatorResidual {
    double value;
    bool boundary_ok;
};

/// || (Htilde A+ - A+ H) psi || / || psi || on a uniform n-point grid.
/// Compositions are applied as successive grid passes with centered
/// stencils; Dirichlet padding beyond the window.
OperatorResidual intertwining_residual(const PotentialTriple& triple, const BetaProvider& beta,
                                       const TestFunction& psi, Interval window, int n);

/// || (A A+ - ((H + delta/2)^2 - c)) psi || / || psi ||, with A the formal
/// adjoint of A+: A = d^2/dx^2 - beta d/dx + (gamma - beta').
OperatorResidual factorization_residual(const PotentialTriple& triple, const BetaProvider& beta,
                                        ShiftConstants k, const TestFunction& psi,
                                        Interval window, int n);

}  // namespace sususy
