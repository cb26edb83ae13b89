#include "feedplan/cli/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace feedplan::cli {

ConfigError::ConfigError(const std::string& source, int line, const std::string& message)
    : Error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + message), line_(line) {}

bool TomlValue::is_number() const {
  return std::holds_alternative<std::int64_t>(data) || std::holds_alternative<double>(data);
}

double TomlValue::as_number() const {
  if (const auto* i = std::get_if<std::int64_t>(&data)) return static_cast<double>(*i);
  return std::get<double>(data);
}

std::string TomlValue::type_name() const {
  switch (data.index()) {
    case 0: return "boolean";
    case 1: return "integer";
    case 2: return "float";
    case 3: return "string";
    default: return "array";
  }
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, TomlDocument& doc) : s_(text), doc_(doc) {}

  void document() {
    while (pos_ < s_.size()) {
      skip_ws();
      if (at_line_end()) {
        end_line();
        continue;
      }
      if (peek() == '[') {
        table_header();
      } else {
        key_value(prefix_);
      }
      end_line();
    }
  }

  TomlValue single_value() {
    skip_ws();
    TomlValue v = value();
    skip_ws();
    if (pos_ != s_.size() && peek() != '#') fail("unexpected text after value");
    return v;
  }

  std::vector<std::string> key_path() {
    std::vector<std::string> parts;
    while (true) {
      skip_ws();
      parts.push_back(simple_key());
      skip_ws();
      if (peek() != '.') break;
      ++pos_;
    }
    return parts;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(doc_.source, line_, msg); }

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void expect(char c, const char* what) {
    if (peek() != c) fail(std::string("expected ") + what);
    ++pos_;
  }
  int line() const { return line_; }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

 private:
  static std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  bool at_line_end() const {
    const char c = peek();
    return c == '\0' || c == '\n' || c == '\r' || c == '#';
  }

  void end_line() {
    skip_ws();
    if (peek() == '#') {
      while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
    }
    if (peek() == '\r') ++pos_;
    if (pos_ < s_.size()) {
      if (s_[pos_] != '\n') fail("expected end of line");
      ++pos_;
      ++line_;
    }
  }

  // Skips blanks, comments and newlines inside arrays.
  void skip_ws_nl() {
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '\n') {
        ++pos_;
        ++line_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void table_header() {
    ++pos_;
    if (peek() == '[') fail("arrays of tables are not supported");
    const std::string path = join(key_path());
    skip_ws();
    expect(']', "']' closing the table header");
    if (doc_.tables.count(path)) fail("table [" + path + "] defined twice");
    if (doc_.values.count(path)) fail("[" + path + "] is already a value");
    doc_.tables[path] = line_;
    prefix_ = path;
  }

  void key_value(const std::string& prefix) {
    const int start_line = line_;
    std::string path = join(key_path());
    if (!prefix.empty()) path = prefix + "." + path;
    skip_ws();
    expect('=', "'=' after key");
    skip_ws();
    TomlValue v = value();
    v.line = start_line;
    if (doc_.values.count(path)) fail("key '" + path + "' defined twice");
    if (doc_.tables.count(path)) fail("key '" + path + "' is already a table");
    doc_.values[path] = std::move(v);
  }

  std::string simple_key() {
    const char c = peek();
    if (c == '"') return basic_string();
    if (c == '\'') return literal_string();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) {
      ++pos_;
    }
    if (pos_ == start) fail("expected a key");
    return s_.substr(start, pos_ - start);
  }

  TomlValue value() {
    TomlValue v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.data = basic_string();
    } else if (c == '\'') {
      v.data = literal_string();
    } else if (c == '[') {
      v.data = array();
    } else if (c == '{') {
      fail("inline tables are not supported");
    } else if (s_.compare(pos_, 4, "true") == 0 && !ident_char(pos_ + 4)) {
      pos_ += 4;
      v.data = true;
    } else if (s_.compare(pos_, 5, "false") == 0 && !ident_char(pos_ + 5)) {
      pos_ += 5;
      v.data = false;
    } else {
      v.data = number();
    }
    return v;
  }

  bool ident_char(std::size_t i) const {
    return i < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i])) || s_[i] == '_');
  }

  std::variant<bool, std::int64_t, double, std::string, TomlArray> number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '+' ||
                                s_[pos_] == '-' || s_[pos_] == '.' || s_[pos_] == '_')) {
      ++pos_;
    }
    std::string tok = s_.substr(start, pos_ - start);
    if (tok.empty()) fail("expected a value");
    std::string body = tok;
    double sign = 1.0;
    if (body[0] == '+' || body[0] == '-') {
      sign = body[0] == '-' ? -1.0 : 1.0;
      body = body.substr(1);
    }
    if (body == "inf") return sign * std::numeric_limits<double>::infinity();
    if (body == "nan") return std::numeric_limits<double>::quiet_NaN();

    std::string clean;
    for (std::size_t i = 0; i < tok.size(); ++i) {
      if (tok[i] != '_') {
        clean += tok[i];
        continue;
      }
      const bool ok = i > 0 && i + 1 < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i - 1])) &&
                      std::isdigit(static_cast<unsigned char>(tok[i + 1]));
      if (!ok) fail("invalid number '" + tok + "'");
    }
    const bool is_float = clean.find_first_of(".eE") != std::string::npos;
    const char* first = clean.data() + (clean[0] == '+' ? 1 : 0);
    const char* last = clean.data() + clean.size();
    if (is_float) {
      double d = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, d);
      if (ec != std::errc() || ptr != last) fail("invalid number '" + tok + "'");
      return d;
    }
    std::int64_t i = 0;
    const auto [ptr, ec] = std::from_chars(first, last, i);
    if (ec != std::errc() || ptr != last) fail("invalid number '" + tok + "'");
    return i;
  }

  TomlArray array() {
    ++pos_;
    TomlArray out;
    while (true) {
      skip_ws_nl();
      if (peek() == ']') {
        ++pos_;
        return out;
      }
      if (done()) fail("unterminated array");
      out.push_back(value());
      skip_ws_nl();
      if (peek() == ',') {
        ++pos_;
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  std::string literal_string() {
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != '\'' && s_[pos_] != '\n') ++pos_;
    if (peek() != '\'') fail("unterminated string");
    return s_.substr(start, pos_++ - start);
  }

  std::string basic_string() {
    ++pos_;
    std::string out;
    while (true) {
      if (pos_ >= s_.size() || s_[pos_] == '\n') fail("unterminated string");
      const char c = s_[pos_++];
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      const char e = peek();
      ++pos_;
      switch (e) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case 'r': out += '\r'; break;
        case 'b': out += '\b'; break;
        case 'f': out += '\f'; break;
        case 'u': out += unicode(4); break;
        case 'U': out += unicode(8); break;
        default: fail(std::string("invalid escape '\\") + e + "'");
      }
    }
  }

  std::string unicode(int digits) {
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + pos_ + digits, cp, 16);
    if (ec != std::errc() || ptr != s_.data() + pos_ + digits) fail("invalid unicode escape");
    pos_ += digits;
    std::string out;
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x110000) {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      fail("unicode escape out of range");
    }
    return out;
  }

  const std::string& s_;
  TomlDocument& doc_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::string prefix_;
};

}  // namespace

TomlDocument parse_toml(const std::string& text, const std::string& source) {
  TomlDocument doc;
  doc.source = source;
  Parser(text, doc).document();
  return doc;
}

void set_toml_value(TomlDocument& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const std::string where = "override '" + assignment + "'";
  if (eq == std::string::npos) throw ConfigError(where, 0, "expected path=value");
  TomlDocument scratch;
  scratch.source = where;
  const std::string key_text = assignment.substr(0, eq);
  Parser kp(key_text, scratch);
  std::string path;
  for (const auto& part : kp.key_path()) path += (path.empty() ? "" : ".") + part;
  kp.skip_ws();
  if (!kp.done()) kp.fail("invalid key");
  const std::string value_text = assignment.substr(eq + 1);
  TomlValue v = Parser(value_text, scratch).single_value();
  v.line = 0;
  doc.values[path] = std::move(v);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  std::string out(buf, end);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string quote_toml(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace feedplan::cli
