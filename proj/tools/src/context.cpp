#include "context.hpp"

#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "sususy/version.hpp"

namespace sususy::cli {

namespace fs = std::filesystem;

fs::path resolve_out_dir(const RunOptions& opts) {
    if (!opts.out_dir.empty()) return opts.out_dir;
    if (const char* env = std::getenv("SUSUSY_OUT_DIR"); env && *env) return env;
    return ".";
}

RunContext::RunContext(std::string command, const RunOptions& opts)
    : command_(std::move(command)),
      out_dir_(resolve_out_dir(opts)),
      jobs_(opts.jobs),
      start_(std::chrono::steady_clock::now()) {
    fs::create_directories(out_dir_);
    if (!opts.config_path.empty()) {
        config_ = KeyValueConfig::parse_file(opts.config_path);
        add_input(opts.config_path);
    }
}

void RunContext::add_input(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    inputs_.emplace_back(path.string(), fingerprint_hex(fnv1a64(buf.str())));
}

std::ofstream RunContext::open_output(const std::string& name) {
    std::ofstream out(out_dir_ / name);
    if (!out) throw ConfigError("cannot create output file: " + (out_dir_ / name).string());
    outputs_.push_back(name);
    return out;
}

fs::path RunContext::write_manifest() {
    using nlohmann::json;
    json j;
    j["command"] = command_;
    j["tool_version"] = std::string(kToolName) + " " + kToolVersion;
    j["fingerprint"] = fingerprint();
    json cfg;
    for (const auto& [k, v] : config_.entries()) cfg[k] = v;
    j["config"] = cfg;

    json inputs = json::array();
    for (const auto& [path, fp] : inputs_) inputs.push_back({{"path", path}, {"fingerprint", fp}});
    j["inputs"] = inputs;

    json outputs = json::array();
    for (const auto& name : outputs_) outputs.push_back(name);
    outputs.push_back("manifest.json");
    j["outputs"] = outputs;

    if (!notes_.empty()) j["notes"] = notes_;

    const auto elapsed = std::chrono::steady_clock::now() - start_;
    j["runtime"] = {
        {"out_dir", out_dir_.string()},
        {"jobs", jobs_},
        {"duration_ms",
         std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count()},
    };

    const fs::path path = out_dir_ / "manifest.json";
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    return path;
}

}  // namespace sususy::cli
