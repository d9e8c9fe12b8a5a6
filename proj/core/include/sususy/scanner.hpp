#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sususy/beta_ode.hpp"
#include "sususy/scan_config.hpp"

namespace sususy {

struct Classification {
    SolutionStatus status;
    double x_sing;  // meaningful only when Singular
    bool regular() const { return status == SolutionStatus::Regular; }
};

/// Integrate from (beta0, beta'0) and report whether the partner potential
/// x^2 + 2 beta' stays finite over the window.
Classification classify_point(InitialPoint p, const ScanConfig& cfg);

enum class Direction { Up, Down };

/// Boundary of the singularity-free band in beta'(0) for a fixed beta0,
/// found by doubling steps away from the curve seed and bisecting to
/// cfg.bisect_tol. Returns nullopt when no singular point exists inside the
/// plane window (the boundary is reported as out of range, not fabricated).
/// Throws std::domain_error when the curve seed itself is not Regular.
std::optional<double> threshold_bisect(double beta0, Direction dir, const ScanConfig& cfg);

struct ColumnThresholds {
    double beta0;
    std::optional<double> lower;
    std::optional<double> upper;
};

/// Cell-center classification of the initial-condition plane plus the
/// per-column threshold brackets.
struct RegionMap {
    ScanConfig config;
    std::vector<Classification> cells;  // row-major: [i_beta * n_dbeta + j]
    std::vector<ColumnThresholds> thresholds;

    InitialPoint cell_center(int i_beta, int j_dbeta) const;
    const Classification& cell(int i_beta, int j_dbeta) const;

    /// CSV of cell centers: beta0, dbeta0, label, x_sing (empty if regular).
    void write_csv(std::ostream& os) const;
    /// JSON document with config echo, threshold table and fingerprint.
    std::string to_json() const;
};

/// Classify every cell center (concurrently, completion-order independent)
/// and locate thresholds for each column whose curve seed is inside the
/// window. Deterministic for a fixed config.
RegionMap scan_region(const ScanConfig& cfg);

}  // namespace sususy
