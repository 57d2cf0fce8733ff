#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rosseland/types.hpp"

namespace rosseland {

/// Configuration problem: carries the offending file line (0 when not tied to
/// one) and the key name. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, int line = 0, std::string key = {});
  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  int line_;
  std::string key_;
};

/// Flat key-value config with [section] headers, '#' or ';' comments and
/// 'key = value' lines. Keys are addressed as "section.key". Every key must be
/// consumed by the run configuration; leftovers are reported with their line.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text, const std::string& filename = "config");
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback);
  std::string require_string(const std::string& key);
  Real get_real(const std::string& key, Real fallback);
  int get_int(const std::string& key, int fallback);
  bool get_bool(const std::string& key, bool fallback);
  /// Comma-separated reals; each entry may be a fraction like "1/8".
  std::vector<Real> get_real_list(const std::string& key, const std::vector<Real>& fallback);

  int line_of(const std::string& key) const;
  /// Throws ConfigError naming the first key that was never read.
  void reject_unconsumed() const;
  /// Keys in file order with raw values, for the config echo.
  std::vector<std::pair<std::string, std::string>> entries() const;
  const std::string& filename() const { return filename_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    int order = 0;
    mutable bool consumed = false;
  };
  std::map<std::string, Entry> entries_;
  std::string filename_;

  const Entry* find(const std::string& key) const;
  [[noreturn]] void bad_value(const std::string& key, const std::string& what) const;
};

Real parse_real_or_fraction(const std::string& text);  // "0.125" or "1/8"

}  // namespace rosseland
