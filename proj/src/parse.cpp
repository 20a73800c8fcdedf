#include "toreq/parse.hpp"

#include <cctype>
#include <string>

#include "toreq/error.hpp"

namespace toreq {
namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  LPoly parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    LPoly result = expr();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected character '") + peek() + "'");
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

  [[noreturn]] void fail_at(std::size_t offset, const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError(msg, line, col);
  }

  // Sign followed by something other than a digit acts as a unary operator.
  bool unary_sign_ahead() const {
    if (peek() != '+' && peek() != '-') return false;
    std::size_t j = pos_ + 1;
    while (j < text_.size() && std::isspace(static_cast<unsigned char>(text_[j]))) ++j;
    return j >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[j]));
  }

  LPoly expr() {
    skip_ws();
    bool negate = false;
    if (unary_sign_ahead()) {
      negate = peek() == '-';
      ++pos_;
    }
    LPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      LPoly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  LPoly term() {
    LPoly acc = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  LPoly factor() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      LPoly inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') return var();
    if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) return rational();
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string signed_integer(bool allow_sign) {
    skip_ws();
    std::string digits;
    if (allow_sign && (peek() == '-' || peek() == '+')) {
      if (peek() == '-') digits.push_back('-');
      ++pos_;
      skip_ws();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(text_[pos_++]);
    return digits;
  }

  LPoly rational() {
    Int num(signed_integer(true));
    Int den = 1;
    skip_ws();
    if (peek() == '/') {
      ++pos_;
      skip_ws();
      std::size_t at = pos_;
      den = Int(signed_integer(false));
      if (den == 0) fail_at(at, "zero denominator");
    }
    Rat value(num, den);
    value.canonicalize();
    return LPoly::constant(nvars_, value);
  }

  LPoly var() {
    std::size_t start = pos_;
    ++pos_;  // 'x'
    std::size_t index = 0;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(text_[pos_++]);
      if (digits.size() > 9) fail_at(start, "variable index too large");
      index = std::stoul(digits);
      if (index == 0) fail_at(start, "variable indices start at 1");
    } else if (nvars_ == 1) {
      index = 1;
    } else {
      fail("expected variable index after 'x'");
    }
    if (index > nvars_) {
      fail_at(start, "variable x" + std::to_string(index) + " exceeds nvars = " + std::to_string(nvars_));
    }
    std::int64_t power = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      std::size_t at = pos_;
      std::string digits = signed_integer(true);
      if (digits.size() > 18) fail_at(at, "exponent too large");
      power = std::stoll(digits);
    }
    Exponent e(nvars_, 0);
    e[index - 1] = power;
    return LPoly::monomial(std::move(e), Rat(1));
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

LPoly parse_poly(std::string_view text, std::size_t nvars) {
  if (nvars == 0) throw Error(ErrorKind::InvalidArgument, "nvars must be positive");
  return Parser(text, nvars).parse();
}

std::size_t infer_nvars(std::string_view text) {
  std::size_t best = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x') continue;
    std::size_t j = i + 1;
    std::size_t v = 0;
    bool any = false;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && j - i < 10) {
      v = v * 10 + static_cast<std::size_t>(text[j] - '0');
      any = true;
      ++j;
    }
    if (any) best = std::max(best, v);
  }
  return best;
}

}  // namespace toreq
