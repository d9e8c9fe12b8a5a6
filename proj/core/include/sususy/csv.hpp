#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sususy/beta_ode.hpp"
#include "sususy/spectral.hpp"

namespace sususy {

/// All CSV files: `#`-prefixed metadata lines (tool version, config
/// fingerprint, status, ...), one header row, then data rows with floats at
/// 17 significant digits.

/// When `file_fingerprint` is given (a run-level fingerprint), it becomes
/// the header's config_fingerprint and the solution's own scan-config
/// fingerprint moves to a scan_config_fingerprint line; the reader prefers
/// the latter.
void write_beta_solution_csv(std::ostream& os, const BetaSolution& sol,
                             const std::string* file_fingerprint = nullptr);
BetaSolution read_beta_solution_csv(std::istream& is);
BetaSolution read_beta_solution_csv(const std::filesystem::path& path);

void write_potential_csv(std::ostream& os, std::span<const double> x,
                         std::span<const double> v, const std::string& column_label,
                         const std::string& fingerprint,
                         const std::vector<std::string>& extra_metadata = {});

void write_triple_csv(std::ostream& os, const PotentialTriple& triple,
                      const std::string& fingerprint);

void write_spectrum_csv(std::ostream& os, const Spectrum& spectrum,
                        const std::string& fingerprint);

}  // namespace sususy
