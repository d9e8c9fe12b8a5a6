#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sususy/config.hpp"

namespace sususy::cli {

/// Singularity where regularity was required; mapped to exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flags shared by every subcommand.
struct RunOptions {
    std::string config_path;  // --config
    std::string out_dir;      // --out, else SUSUSY_OUT_DIR, else "."
    int jobs = 0;             // --jobs
};

std::filesystem::path resolve_out_dir(const RunOptions& opts);

/// Per-run bookkeeping: the resolved (fingerprinted) config, registered
/// inputs and outputs, and the manifest written at the end. Every output
/// file carries the manifest's fingerprint in its header.
class RunContext {
  public:
    RunContext(std::string command, const RunOptions& opts);

    KeyValueConfig& config() { return config_; }
    const KeyValueConfig& config() const { return config_; }
    std::string fingerprint() const { return fingerprint_hex(config_.fingerprint()); }

    const std::filesystem::path& out_dir() const { return out_dir_; }
    int jobs() const { return jobs_; }

    void add_input(const std::filesystem::path& path);
    std::ofstream open_output(const std::string& name);
    void note(const std::string& line) { notes_.push_back(line); }

    /// Writes manifest.json (which lists itself) and returns its path.
    std::filesystem::path write_manifest();

  private:
    std::string command_;
    std::filesystem::path out_dir_;
    int jobs_;
    KeyValueConfig config_;
    std::vector<std::pair<std::string, std::string>> inputs_;  // path, fingerprint
    std::vector<std::string> outputs_;
    std::vector<std::string> notes_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace sususy::cli
