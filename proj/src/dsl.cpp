#include "hardylab/dsl.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

#include "hardylab/error.hpp"

namespace hardylab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
  throw Error(ErrorKind::ParseError, "at position " + std::to_string(pos) + ": " + what);
}

class Shorthand {
 public:
  explicit Shorthand(std::string_view text) : text_(text) {}

  PiecewiseFn parse() {
    PiecewiseFn total = term();
    skip_space();
    while (pos_ < text_.size()) {
      expect('+');
      total = add(total, term());
      skip_space();
    }
    return total;
  }

 private:
  PiecewiseFn term() {
    skip_space();
    double coef = 1.0;
    if (pos_ < text_.size() && !std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      coef = number(false);
      expect('*');
      skip_space();
    }
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      name += text_[pos_++];
    }
    expect('(');
    if (name == "chi") {
      const double l = number(true);
      expect(',');
      const double r = number(true);
      expect(')');
      return interval(start, 0.0, l, r, coef);
    }
    if (name == "pow") {
      const double a = number(false);
      expect(',');
      const double l = number(true);
      expect(',');
      const double r = number(true);
      expect(')');
      return interval(start, a, l, r, coef);
    }
    fail(start, "unknown function '" + name + "' (expected chi or pow)");
  }

  PiecewiseFn interval(std::size_t at, double a, double l, double r, double coef) {
    if (!(l >= 0.0) || !std::isfinite(l) || !(r > l)) {
      fail(at, "interval needs 0 <= l < r");
    }
    return power_on(a, l, r, coef);
  }

  double number(bool allow_inf) {
    skip_space();
    const std::size_t start = pos_;
    if (text_.substr(pos_, 3) == "inf") {
      if (!allow_inf) fail(start, "inf is only allowed as an endpoint");
      pos_ += 3;
      return kInf;
    }
    double v = 0.0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    if (pos_ < text_.size() && text_[pos_] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || !std::isfinite(v)) fail(start, "expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(pos_, std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

double json_number(const nlohmann::json& v, bool allow_inf, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInf;
  throw Error(ErrorKind::ParseError, std::string("bad ") + what + ": " + v.dump());
}

PiecewiseFn parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "at position " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("breakpoints") || !doc.contains("pieces") ||
      !doc["breakpoints"].is_array() || !doc["pieces"].is_array()) {
    throw Error(ErrorKind::ParseError, "expected an object with arrays 'breakpoints' and 'pieces'");
  }
  std::vector<double> breakpoints;
  for (const auto& b : doc["breakpoints"]) breakpoints.push_back(json_number(b, true, "breakpoint"));
  std::vector<AtomList> pieces;
  for (const auto& piece : doc["pieces"]) {
    if (!piece.is_array()) throw Error(ErrorKind::ParseError, "each piece must be an array");
    AtomList atoms;
    for (const auto& atom : piece) {
      if (!atom.is_object() || !atom.contains("c") || !atom.contains("a")) {
        throw Error(ErrorKind::ParseError, "atom needs fields c and a: " + atom.dump());
      }
      const double k = atom.contains("k") ? json_number(atom["k"], false, "log power") : 0.0;
      if (k != std::floor(k)) throw Error(ErrorKind::ParseError, "log power must be an integer");
      atoms.push_back({json_number(atom["c"], false, "coefficient"),
                       json_number(atom["a"], false, "exponent"), static_cast<int>(k)});
    }
    pieces.push_back(std::move(atoms));
  }
  return make_piecewise(breakpoints, std::move(pieces));
}

}  // namespace

PiecewiseFn parse_function_spec(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  if (first == text.size()) throw Error(ErrorKind::ParseError, "at position 0: empty function spec");
  PiecewiseFn f = text[first] == '{' ? parse_json(text) : Shorthand(text).parse();
  return f.with_nonnegative(sampled_nonnegative(f));
}

nlohmann::json function_to_json(const PiecewiseFn& f) {
  nlohmann::json breakpoints = nlohmann::json::array({0.0});
  for (double b : f.interior_breaks()) breakpoints.push_back(b);
  breakpoints.push_back("inf");
  nlohmann::json pieces = nlohmann::json::array();
  for (const auto& piece : f.pieces()) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& atom : piece) {
      atoms.push_back({{"c", atom.coef}, {"a", atom.exponent}, {"k", atom.log_power}});
    }
    pieces.push_back(std::move(atoms));
  }
  return {{"breakpoints", std::move(breakpoints)}, {"pieces", std::move(pieces)}};
}

}  // namespace hardylab
