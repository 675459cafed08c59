#include "blockalg/literal.hpp"

#include <cctype>

#include "blockalg/error.hpp"

namespace blockalg {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  // Optional sign, digits, optional '/' digits.
  std::string_view rat_token() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    digits();
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      digits();
    }
    return s_.substr(start, pos_ - start);
  }
  long int_token() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && s_[pos_] == '-') ++pos_;
    digits();
    std::string tok(s_.substr(start, pos_ - start));
    try {
      return std::stol(tok);
    } catch (const std::exception&) {
      fail("malformed multi-index component '" + tok + "'");
    }
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse, why + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

 private:
  void digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected digits");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::pair<BasisIdx, Rat> parse_term(Cursor& cur, const Rat& sign) {
  Rat coeff(1);
  if (cur.peek() != 'x') {
    coeff = parse_rat(cur.rat_token());
    cur.accept('*');
  }
  cur.expect('x');
  cur.expect('[');
  Rat a1 = parse_rat(cur.rat_token());
  cur.expect(',');
  Rat a2 = parse_rat(cur.rat_token());
  cur.expect(';');
  long i1 = cur.int_token();
  cur.expect(',');
  long i2 = cur.int_token();
  cur.expect(']');
  if (i1 < 0 || i2 < 0) cur.fail("negative multi-index");
  return {BasisIdx{{a1, a2}, {i1, i2}}, sign * coeff};
}

}  // namespace

std::vector<std::pair<BasisIdx, Rat>> parse_terms(std::string_view text) {
  Cursor cur(text);
  std::vector<std::pair<BasisIdx, Rat>> out;
  if (cur.done()) cur.fail("empty element literal");
  if (cur.peek() == '0') {
    // "0" alone; a coefficient starting with 0 (e.g. "0 x[..]") is still a term.
    Cursor probe = cur;
    probe.rat_token();
    if (probe.done()) return out;
  }
  Rat sign(1);
  if (cur.accept('-')) sign = -1;
  else cur.accept('+');
  out.push_back(parse_term(cur, sign));
  while (!cur.done()) {
    if (cur.accept('+')) sign = 1;
    else if (cur.accept('-')) sign = -1;
    else cur.fail("expected '+' or '-'");
    out.push_back(parse_term(cur, sign));
  }
  return out;
}

Element parse_element(const SpecPtr& spec, std::string_view text) { return reduce(spec, parse_terms(text)); }

std::string to_literal(const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [b, c] : e.terms()) {
    const bool negative = sgn(c) < 0;
    const Rat mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += b.to_string();
    first = false;
  }
  return out;
}

}  // namespace blockalg
