#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sususy/operators.hpp"

namespace sususy {

/// Symmetric tridiagonal discretization of -d^2/dx^2 + V on [a, b] with
/// Dirichlet conditions: n interior points, diag_i = 2/h^2 + V(x_i),
/// offdiag = -1/h^2, h = (b - a)/(n + 1).
struct DiscretizedHamiltonian {
    double a, b;
    int n;
    std::vector<double> diag;
    std::vector<double> offdiag;  // n - 1 entries
    std::string potential_label;

    double h() const { return (b - a) / (n + 1); }
};

DiscretizedHamiltonian discretize(const std::function<double(double)>& potential,
                                  Interval domain, int n, std::string label = {});

/// Sampled potential, interpolated onto the uniform grid by natural cubic
/// spline. Samples must cover the domain.
DiscretizedHamiltonian discretize(std::span<const double> x, std::span<const double> v,
                                  Interval domain, int n, std::string label = {});

struct Spectrum {
    std::vector<double> eigenvalues;  // strictly ascending
    int k;
    double a, b;
    int n;
    std::string label;
};

/// k algebraically smallest eigenvalues by Sturm-sequence counting plus
/// bisection: certified counts, no missed levels. Linear-algebra error is
/// ~||T|| * 1e-14; the O(h^2) discretization error dominates.
Spectrum lowest_eigenvalues(const DiscretizedHamiltonian& hd, int k);

/// Number of eigenvalues of the tridiagonal matrix strictly below sigma.
int sturm_count_below(const DiscretizedHamiltonian& hd, double sigma);

/// One-parameter family of potentials isospectral to the oscillator,
///   V_lambda(x) = x^2 - 2 d/dx [ exp(-x^2) / (lambda + int_0^x exp(-y^2) dy) ],
/// evaluated through the analytic derivative. Requires |lambda| > sqrt(pi)/2.
double abraham_moses(double lambda, double x);

/// Elementwise |a_i - b_i|; requires equal k and matching discretization.
std::vector<double> compare_spectra(const Spectrum& a, const Spectrum& b);

struct LocalMinimum {
    double x;
    double depth;  // potential value at the minimum
};

struct DoubleWellReport {
    std::vector<LocalMinimum> minima;
    double asymmetry;  // normalized sup-difference about the best center
};

/// Local minima of a sampled potential (prominence-filtered) and a
/// reflection-asymmetry score: the minimum over candidate centers of
/// sup_t |V(x0+t) - V(x0-t)| / (V_max - V_min). Candidate centers are
/// minima-pair midpoints plus grid points in the central half of the
/// domain; a score above ~0.01 certifies that no reflection symmetry
/// exists on the grid.
DoubleWellReport double_well_analysis(std::span<const double> x, std::span<const double> v);

/// Evaluate a sampled potential beyond its window through an asymptotic
/// form: spline inside, `asymptote` outside. `tail_mismatch` reports the
/// seam gap at the two window ends.
struct ExtendedPotential {
    std::function<double(double)> eval;
    double tail_mismatch;
};
ExtendedPotential extend_with_asymptote(std::span<const double> x, std::span<const double> v,
                                        std::function<double(double)> asymptote);

}  // namespace sususy
