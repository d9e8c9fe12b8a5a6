#include "sususy/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "sususy/beta_ode.hpp"
#include "sususy/interp.hpp"
#include "sususy/special_functions.hpp"

namespace sususy {

DiscretizedHamiltonian discretize(const std::function<double(double)>& potential,
                                  Interval domain, int n, std::string label) {
    if (n < 16) throw std::invalid_argument("discretize: need at least 16 interior points");
    if (!(domain.length() > 0.0)) throw std::invalid_argument("discretize: empty domain");
    DiscretizedHamiltonian hd;
    hd.a = domain.lo;
    hd.b = domain.hi;
    hd.n = n;
    hd.potential_label = std::move(label);
    const double h = hd.h();
    const double inv_h2 = 1.0 / (h * h);
    hd.diag.resize(n);
    hd.offdiag.assign(n - 1, -inv_h2);
    for (int i = 0; i < n; ++i) {
        const double x = domain.lo + (i + 1) * h;
        const double v = potential(x);
        if (!std::isfinite(v))
            throw std::invalid_argument("discretize: potential not finite inside the domain");
        hd.diag[i] = 2.0 * inv_h2 + v;
    }
    return hd;
}

DiscretizedHamiltonian discretize(std::span<const double> x, std::span<const double> v,
                                  Interval domain, int n, std::string label) {
    const CubicSpline spline(x, v);
    if (spline.x_front() > domain.lo || spline.x_back() < domain.hi)
        throw std::invalid_argument("discretize: samples do not cover the domain");
    return discretize([&spline](double q) { return spline(q); }, domain, n,
                      std::move(label));
}

int sturm_count_below(const DiscretizedHamiltonian& hd, double sigma) {
    // negative pivots of the LDL^T factorization of T - sigma I
    int count = 0;
    double q = hd.diag[0] - sigma;
    if (q < 0.0) ++count;
    for (int i = 1; i < hd.n; ++i) {
        const double e = hd.offdiag[i - 1];
        double denom = q;
        if (denom == 0.0) denom = std::abs(e) * 1e-300 + 1e-300;
        q = (hd.diag[i] - sigma) - e * e / denom;
        if (q < 0.0) ++count;
    }
    return count;
}

Spectrum lowest_eigenvalues(const DiscretizedHamiltonian& hd, int k) {
    if (k < 1 || k > hd.n)
        throw std::invalid_argument("lowest_eigenvalues: k out of range");

    // Gershgorin bounds
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < hd.n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(hd.offdiag[i - 1]);
        if (i + 1 < hd.n) r += std::abs(hd.offdiag[i]);
        lo = std::min(lo, hd.diag[i] - r);
        hi = std::max(hi, hd.diag[i] + r);
    }
    const double span = hi - lo;
    const double tol = std::max(span, 1.0) * 1e-14;

    Spectrum s;
    s.k = k;
    s.a = hd.a;
    s.b = hd.b;
    s.n = hd.n;
    s.label = hd.potential_label;
    s.eigenvalues.reserve(k);
    for (int idx = 1; idx <= k; ++idx) {
        double a = lo, b = hi;
        while (b - a > tol) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            (sturm_count_below(hd, mid) >= idx ? b : a) = mid;
        }
        s.eigenvalues.push_back(0.5 * (a + b));
    }
    return s;
}

double abraham_moses(double lambda, double x) {
    if (!(std::abs(lambda) > kLambdaMin))
        throw std::invalid_argument("abraham_moses: |lambda| must exceed sqrt(pi)/2");
    const double u = std::exp(-x * x) / (lambda + gaussian_integral(x));
    return x * x + 4.0 * x * u + 2.0 * u * u;
}

std::vector<double> compare_spectra(const Spectrum& a, const Spectrum& b) {
    if (a.k != b.k) throw std::invalid_argument("compare_spectra: level counts differ");
    if (a.n != b.n || a.a != b.a || a.b != b.b)
        throw std::invalid_argument("compare_spectra: discretizations differ");
    std::vector<double> diff(a.eigenvalues.size());
    for (std::size_t i = 0; i < diff.size(); ++i)
        diff[i] = std::abs(a.eigenvalues[i] - b.eigenvalues[i]);
    return diff;
}

DoubleWellReport double_well_analysis(std::span<const double> x, std::span<const double> v) {
    const std::size_t n = x.size();
    if (n < 101) throw std::invalid_argument("double_well_analysis: need >= 101 samples");
    if (v.size() != n) throw std::invalid_argument("double_well_analysis: length mismatch");

    const auto [vmin_it, vmax_it] = std::minmax_element(v.begin(), v.end());
    const double range = *vmax_it - *vmin_it;
    const double prominence_floor = 1e-3 * range;

    DoubleWellReport report;
    // strict sign change of the first differences, then prominence filter
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(v[i] <= v[i - 1] && v[i] < v[i + 1])) continue;
        double barrier_left = v[i];
        for (std::size_t j = i; j-- > 0;) {
            if (v[j] < v[i]) break;
            barrier_left = std::max(barrier_left, v[j]);
        }
        double barrier_right = v[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (v[j] < v[i]) break;
            barrier_right = std::max(barrier_right, v[j]);
        }
        const double prominence = std::min(barrier_left, barrier_right) - v[i];
        if (prominence >= prominence_floor) report.minima.push_back({x[i], v[i]});
    }

    // Reflection-asymmetry score. Candidate centers with a tiny mirror
    // overlap would rate any potential "symmetric", so grid candidates are
    // restricted to the central half of the domain.
    const CubicSpline spline(x, v);
    auto score_about = [&](double x0) {
        double sup = 0.0;
        const double reach = std::min(x0 - x.front(), x.back() - x0);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = x[i] - x0;
            if (std::abs(t) > reach) continue;
            sup = std::max(sup, std::abs(spline(x0 + t) - spline(x0 - t)));
        }
        return sup / range;
    };

    double best = std::numeric_limits<double>::infinity();
    const double quarter = 0.25 * (x.back() - x.front());
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < x.front() + quarter || x[i] > x.back() - quarter) continue;
        best = std::min(best, score_about(x[i]));
    }
    for (std::size_t a_i = 0; a_i < report.minima.size(); ++a_i)
        for (std::size_t b_i = a_i + 1; b_i < report.minima.size(); ++b_i)
            best = std::min(best,
                            score_about(0.5 * (report.minima[a_i].x + report.minima[b_i].x)));
    report.asymmetry = std::isfinite(best) ? best : 0.0;
    return report;
}

ExtendedPotential extend_with_asymptote(std::span<const double> x, std::span<const double> v,
                                        std::function<double(double)> asymptote) {
    auto spline = std::make_shared<CubicSpline>(x, v);
    const double lo = spline->x_front(), hi = spline->x_back();
    const double mismatch = std::max(std::abs((*spline)(lo)-asymptote(lo)),
                                     std::abs((*spline)(hi)-asymptote(hi)));
    ExtendedPotential ext;
    ext.tail_mismatch = mismatch;
    ext.eval = [spline, lo, hi, fn = std::move(asymptote)](double q) {
        if (q < lo || q > hi) return fn(q);
        return (*spline)(q);
    };
    return ext;
}

}  // namespace sususy
