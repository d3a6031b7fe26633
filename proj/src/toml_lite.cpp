#include "carma/toml_lite.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "carma/error.hpp"

namespace carma::toml_lite {

namespace {

using nlohmann::json;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  json run() {
    json doc = json::object();
    json* table = &doc;
    while (true) {
      skip_blank_lines();
      if (done()) break;
      if (peek() == '[') {
        table = &open_table(doc);
      } else {
        const std::string key = parse_key();
        skip_inline_space();
        expect('=');
        skip_inline_space();
        if (table->contains(key)) fail("duplicate key '" + key + "'");
        (*table)[key] = parse_value();
      }
      end_of_line();
    }
    return doc;
  }

 private:
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + what);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_space() {
    while (!done() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }

  void skip_comment() {
    if (peek() == '#')
      while (!done() && peek() != '\n') ++pos_;
  }

  void newline() {
    if (peek() == '\r') ++pos_;
    if (peek() == '\n') {
      ++pos_;
      ++line_;
    }
  }

  // Whitespace, comments and newlines (inside arrays and between entries).
  void skip_all_space() {
    while (!done()) {
      const char c = peek();
      if (c == ' ' || c == '\t') {
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else if (c == '\n' || c == '\r') {
        newline();
      } else {
        break;
      }
    }
  }

  void skip_blank_lines() { skip_all_space(); }

  void end_of_line() {
    skip_inline_space();
    skip_comment();
    if (done()) return;
    if (peek() != '\n' && peek() != '\r') fail("unexpected trailing characters");
    newline();
  }

  json& open_table(json& doc) {
    expect('[');
    if (peek() == '[') fail("arrays of tables are not supported");
    json* node = &doc;
    while (true) {
      skip_inline_space();
      const std::string part = parse_key();
      if (!node->contains(part)) (*node)[part] = json::object();
      node = &(*node)[part];
      if (!node->is_object()) fail("table '" + part + "' redefines a value");
      skip_inline_space();
      if (peek() == '.') {
        ++pos_;
        continue;
      }
      expect(']');
      return *node;
    }
  }

  std::string parse_key() {
    if (peek() == '"' || peek() == '\'') return parse_string();
    const std::size_t start = pos_;
    while (!done() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                       peek() == '-'))
      ++pos_;
    if (start == pos_) fail("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string parse_string() {
    const char quote = peek();
    ++pos_;
    std::string out;
    while (true) {
      if (done() || peek() == '\n') fail("unterminated string");
      const char c = text_[pos_++];
      if (c == quote) break;
      if (c == '\\' && quote == '"') {
        if (done()) fail("unterminated escape");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '\\': out += '\\'; break;
          case '"': out += '"'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  json parse_value() {
    const char c = peek();
    if (c == '"' || c == '\'') return parse_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  json parse_array() {
    expect('[');
    json arr = json::array();
    skip_all_space();
    while (peek() != ']') {
      arr.push_back(parse_value());
      skip_all_space();
      if (peek() == ',') {
        ++pos_;
        skip_all_space();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
    ++pos_;
    return arr;
  }

  json parse_inline_table() {
    expect('{');
    json obj = json::object();
    skip_inline_space();
    while (peek() != '}') {
      const std::string key = parse_key();
      skip_inline_space();
      expect('=');
      skip_inline_space();
      obj[key] = parse_value();
      skip_inline_space();
      if (peek() == ',') {
        ++pos_;
        skip_inline_space();
      } else if (peek() != '}') {
        fail("expected ',' or '}' in inline table");
      }
    }
    ++pos_;
    return obj;
  }

  json parse_number() {
    const std::size_t start = pos_;
    while (!done() && std::string_view("+-0123456789.eE_infa").find(peek()) !=
                          std::string_view::npos)
      ++pos_;
    std::string token;
    for (char c : text_.substr(start, pos_ - start))
      if (c != '_') token += c;
    if (token.empty()) fail("expected a value");
    if (token == "inf" || token == "+inf") return std::numeric_limits<double>::infinity();
    if (token == "-inf") return -std::numeric_limits<double>::infinity();

    const bool is_float = token.find_first_of(".eE") != std::string::npos;
    const char* first = token.data();
    if (*first == '+') ++first;
    const char* last = token.data() + token.size();
    if (is_float) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) fail("malformed number '" + token + "'");
      return v;
    }
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) fail("malformed number '" + token + "'");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

bool bare_key(const std::string& key) {
  if (key.empty()) return false;
  for (char c : key)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  return true;
}

std::string format_key(const std::string& key) {
  return bare_key(key) ? key : json(key).dump();
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_value(const json& v) {
  switch (v.type()) {
    case json::value_t::string: return v.dump();
    case json::value_t::boolean: return v.get<bool>() ? "true" : "false";
    case json::value_t::number_integer:
    case json::value_t::number_unsigned: return v.dump();
    case json::value_t::number_float: return format_double(v.get<double>());
    case json::value_t::array: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_value(v[i]);
      }
      return out + "]";
    }
    case json::value_t::object: {
      std::string out = "{";
      bool first = true;
      for (const auto& [k, item] : v.items()) {
        out += first ? " " : ", ";
        first = false;
        out += format_key(k) + " = " + format_value(item);
      }
      return out + (first ? "}" : " }");
    }
    default: throw ConfigError("toml: cannot encode null values");
  }
}

void dump_table(const json& table, const std::string& prefix, std::ostringstream& os) {
  for (const auto& [k, v] : table.items())
    if (!v.is_object()) os << format_key(k) << " = " << format_value(v) << '\n';
  for (const auto& [k, v] : table.items()) {
    if (!v.is_object()) continue;
    const std::string name = prefix.empty() ? format_key(k) : prefix + "." + format_key(k);
    os << '\n' << '[' << name << "]\n";
    dump_table(v, name, os);
  }
}

}  // namespace

json parse(std::string_view text) { return Parser(text).run(); }

std::string dump(const json& doc) {
  if (!doc.is_object()) throw ConfigError("toml: document must be an object");
  std::ostringstream os;
  dump_table(doc, "", os);
  return os.str();
}

}  // namespace carma::toml_lite
