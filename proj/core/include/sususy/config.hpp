#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sususy {

/// Raised for malformed config text or invalid values; the message carries
/// the origin, line number and field name where available.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration with `#` comments. Keys are kept in a
/// sorted map so the canonical serialization (and hence the fingerprint)
/// does not depend on insertion order.
class KeyValueConfig {
  public:
    static KeyValueConfig parse(std::string_view text, std::string_view origin = "<memory>");
    static KeyValueConfig parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, std::string fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;

    void set(const std::string& key, std::string value);
    void set_double(const std::string& key, double value);
    void set_int(const std::string& key, int value);

    /// Sorted `key = value` lines, one per entry; the fingerprint input.
    std::string canonical() const;
    std::uint64_t fingerprint() const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

  private:
    std::map<std::string, std::string> entries_;
};

/// 17 significant digits: enough to round-trip any double bit-exactly.
std::string format_double17(double v);

/// FNV-1a 64-bit hash; the fingerprint primitive for configs and files.
std::uint64_t fnv1a64(std::string_view bytes);

std::string fingerprint_hex(std::uint64_t fp);

}  // namespace sususy
