#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rosseland/grid.hpp"

namespace rosseland {

/// Fixed 17-significant-digit, locale-independent formatting. All emitted
/// numbers go through this so outputs are byte-reproducible.
std::string format_real(Real v);

/// Field file: first line "dims nx [ny]", then one nodal value per line in
/// row-major order.
void write_field(std::ostream& out, const ScalarField& field);
std::string field_to_string(const ScalarField& field);
/// Parses a field file; the grid is reconstructed as a non-periodic domain
/// grid unless `periodic` is set. Throws std::runtime_error on malformed input.
ScalarField read_field(std::istream& in, bool periodic = false);

/// Minimal ordered JSON emitter (objects keep insertion order, numbers use
/// format_real). Enough structure for the summary files.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(Real v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& null_value();

  std::string str() const;

 private:
  void comma_if_needed();
  void indent();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool after_key_ = false;
};

/// CSV with a fixed header, '\n' newlines, format_real numbers.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<Real>& row);
  std::string str() const;

 private:
  std::string out_;
  std::size_t columns_;
};

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace rosseland
