#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "feedplan/error.hpp"

namespace feedplan::cli {

/// Parse or type error in a config document. `line` is 1-based, 0 when the
/// source has no line information.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray> data;
  int line = 0;

  bool is_number() const;
  double as_number() const;  // integers widen to double
  std::string type_name() const;
};

/// Flat view of a TOML document: every leaf value keyed by its full dotted
/// path ("planner.step_eps"). Supports tables, dotted keys, basic and literal
/// strings, integers, floats (inf/nan included), booleans and arrays.
/// Inline tables, arrays of tables and dates are rejected.
struct TomlDocument {
  std::string source;                        // file name used in messages
  std::map<std::string, TomlValue> values;
  std::map<std::string, int> tables;         // header path -> line
};

TomlDocument parse_toml(const std::string& text, const std::string& source = "<string>");

/// Assigns one `path = value` pair, where value is TOML syntax. Used for
/// command-line overrides; replaces any existing value.
void set_toml_value(TomlDocument& doc, const std::string& assignment);

/// Shortest text that reads back to the same double (17 significant digits
/// at most), always with a decimal point or exponent.
std::string format_double(double v);

/// Quotes and escapes a string as a TOML basic string.
std::string quote_toml(const std::string& s);

}  // namespace feedplan::cli
