#include "gft/notation.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <vector>

namespace gft {

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw ParseError("cannot format number");
  return std::string(buf.data(), end);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last) {
    throw ParseError("invalid number '" + std::string(text) + "'");
  }
  return value;
}

std::string blade_label(BladeIndex blade, Signature sig) {
  if (blade.bits == 0) return "1";
  std::string out = "e";
  const bool digits = sig.n() <= 9;
  if (!digits) out += '(';
  bool first = true;
  for (int j = 0; j < sig.n(); ++j) {
    if ((blade.bits >> j & 1u) == 0) continue;
    if (!digits && !first) out += ',';
    out += std::to_string(j + 1);
    first = false;
  }
  if (!digits) out += ')';
  return out;
}

std::string format_multivector(const Multivector& a) {
  std::string out;
  const auto c = a.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    const double mag = std::abs(c[k]);
    if (out.empty()) {
      if (std::signbit(c[k])) out += '-';
    } else {
      out += std::signbit(c[k]) ? " - " : " + ";
    }
    const BladeIndex blade{static_cast<std::uint32_t>(k)};
    if (k == 0) {
      out += format_number(mag);
    } else if (mag == 1.0) {
      out += blade_label(blade, a.signature());
    } else {
      out += format_number(mag) + "*" + blade_label(blade, a.signature());
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, Signature sig) : text_(text), sig_(sig), out_(sig) {}

  Multivector run() {
    skip_space();
    if (at_end()) fail("empty multivector expression");
    bool first = true;
    while (!at_end()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
        skip_space();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      parse_term(sign);
      first = false;
      skip_space();
    }
    return out_;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " in '" + std::string(text_) + "' at offset " + std::to_string(pos_));
  }

  void parse_term(double sign) {
    double coeff = 1.0;
    std::uint32_t blade = 0;
    if (!at_end() && peek() == 'e') {
      blade = parse_blade();
    } else {
      coeff = parse_coefficient();
      skip_space();
      if (!at_end() && peek() == '*') {
        ++pos_;
        skip_space();
        if (at_end() || peek() != 'e') fail("expected basis label after '*'");
        blade = parse_blade();
      }
    }
    out_[blade] += sign * coeff;
  }

  double parse_coefficient() {
    const std::size_t start = pos_;
    while (!at_end()) {
      const char ch = peek();
      const bool exponent_sign =
          (ch == '+' || ch == '-') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.' || exponent_sign) {
        ++pos_;
      } else if ((ch == 'e' || ch == 'E') && pos_ > start && pos_ + 1 < text_.size() &&
                 (std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) ||
                  text_[pos_ + 1] == '+' || text_[pos_ + 1] == '-')) {
        // Exponent marker only when it directly follows digits of this number
        // and is not a basis label (labels are introduced by '*').
        ++pos_;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) && ch != 'e') {
        // "inf"/"nan" style tokens
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected number or basis label");
    return parse_number(text_.substr(start, pos_ - start));
  }

  std::uint32_t parse_blade() {
    ++pos_;  // 'e'
    std::vector<int> indices;
    if (!at_end() && peek() == '(') {
      ++pos_;
      while (true) {
        skip_space();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected basis index");
        indices.push_back(std::stoi(std::string(text_.substr(start, pos_ - start))));
        skip_space();
        if (at_end()) fail("unterminated basis label");
        if (peek() == ')') {
          ++pos_;
          break;
        }
        if (peek() != ',') fail("expected ',' or ')' in basis label");
        ++pos_;
      }
    } else {
      if (sig_.n() > 9) fail("digit basis labels are ambiguous for n > 9; use e(i,j,...)");
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        indices.push_back(peek() - '0');
        ++pos_;
      }
      if (indices.empty()) fail("basis label without indices");
    }
    std::uint32_t bits = 0;
    int previous = 0;
    for (int idx : indices) {
      if (idx < 1 || idx > sig_.n()) {
        fail("unknown basis vector e" + std::to_string(idx) + " for Cl(" + std::to_string(sig_.p()) +
             "," + std::to_string(sig_.q()) + ")");
      }
      if (idx <= previous) fail("basis indices must be strictly increasing");
      previous = idx;
      bits |= std::uint32_t{1} << (idx - 1);
    }
    return bits;
  }

  std::string_view text_;
  Signature sig_;
  Multivector out_;
  std::size_t pos_ = 0;
};

}  // namespace

Multivector parse_multivector(std::string_view text, Signature sig) {
  return TermParser(text, sig).run();
}

}  // namespace gft
