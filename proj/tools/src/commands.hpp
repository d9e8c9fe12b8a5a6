#pragma once

#include <optional>
#include <string>
#include <vector>

#include "context.hpp"

namespace sususy::cli {

/// Flag values; only set entries override the config file and defaults.
struct CommandFlags {
    std::optional<std::string> seed_source;  // minus2x | eq17:lambda=V | csv:PATH
    std::optional<double> lambda;
    std::optional<double> beta0;
    std::optional<double> dbeta0;
    std::vector<double> dbeta0_list;  // figure2 accepts several
    std::optional<int> kmax;
    std::optional<std::string> grid;    // scan: "NBxND"; others: point count
    std::optional<std::string> window;  // scan: "a:b:c:d"; spectrum: "a:b"
};

int run_derive(const RunOptions& opts, const CommandFlags& flags);
int run_integrate(const RunOptions& opts, const CommandFlags& flags);
int run_scan(const RunOptions& opts, const CommandFlags& flags);
int run_spectrum(const RunOptions& opts, const CommandFlags& flags);
int run_figure2(const RunOptions& opts, const CommandFlags& flags);
int run_verify(const RunOptions& opts, const CommandFlags& flags);

}  // namespace sususy::cli
