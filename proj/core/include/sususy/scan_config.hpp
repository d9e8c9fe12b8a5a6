#pragma once

#include <cstdint>

#include "sususy/config.hpp"
#include "sususy/operators.hpp"

namespace sususy {

/// Single source of every numerical-policy decision: integration window,
/// tolerances, blow-up criteria, plane window and grid, bisection width.
/// Fingerprints of this struct travel in all output headers.
struct ScanConfig {
    // integration window and local error control; the trajectories amplify
    // local error by ~1e4 where the regular band bends, so the defaults sit
    // well below the 1e-6 conformance budget
    double x_max = 6.0;
    double rtol = 1e-12;
    double atol = 1e-14;
    double max_step = 0.05;  // also bounds the dense-output interpolation error

    // termination criteria: |beta| pole guard, partner-potential blow-up
    // via beta', and adaptive step collapse. Regular trajectories keep
    // |beta'| below ~20; blow-ups race past 1e8 within a short x interval,
    // and the higher cap keeps the band edge sharp (grazing trajectories
    // hover near any lower cap and would classify noisily there).
    double beta_floor = 1e-8;
    double blowup_cap = 1e8;
    double step_floor = 1e-12;

    // initial-condition plane window and cell grid; n_beta is even so no
    // column sits exactly on beta0 = 0, where the regular band pinches to
    // a single point and threshold brackets would degenerate
    Interval beta0_window{-1.1, 1.1};
    Interval dbeta0_window{-4.0, 1.0};
    int n_beta = 44;
    int n_dbeta = 60;

    double bisect_tol = 1e-4;

    int jobs = 0;  // worker pool size for the plane scan; 0 = all CPUs

    /// Throws ConfigError for non-positive tolerances, empty windows or a
    /// degenerate grid.
    void validate() const;

    static ScanConfig from_config(const KeyValueConfig& kv);
    KeyValueConfig echo() const;
    std::uint64_t fingerprint() const { return echo().fingerprint(); }
};

}  // namespace sususy
