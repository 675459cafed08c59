#include <cctype>

#include "blockalg/derivations.hpp"
#include "blockalg/error.hpp"
#include "blockalg/literal.hpp"

namespace blockalg {

namespace {

struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  bool accept(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (s.substr(pos, w.size()) != w) return false;
    std::size_t end = pos + w.size();
    if (end < s.size() && (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_')) return false;
    pos = end;
    return true;
  }
  bool at_digit() {
    skip_ws();
    return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
  }
  std::string_view rat_token() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    return s.substr(start, pos - start);
  }
  std::string_view until_close() {
    std::size_t close = s.find(')', pos);
    if (close == std::string_view::npos) fail("missing ')'");
    std::string_view body = s.substr(pos, close - pos);
    pos = close + 1;
    return body;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::Parse, why + " at offset " + std::to_string(pos) + " in derivation '" +
                                      std::string(s) + "'");
  }
};

Derivation parse_atom(Scanner& sc, const SpecPtr& spec, bool permissive) {
  if (sc.accept_word("ad")) {
    if (!sc.accept('(')) sc.fail("expected '(' after ad");
    return ad(parse_element(spec, sc.until_close()));
  }
  if (sc.accept_word("dmu")) {
    if (!sc.accept('(')) sc.fail("expected '(' after dmu");
    GroupHom mu;
    if (!sc.accept(')')) {
      do {
        mu.values.push_back(parse_rat(sc.rat_token()));
      } while (sc.accept(','));
      if (!sc.accept(')')) sc.fail("expected ')' after dmu values");
    }
    return make_dmu(spec, std::move(mu));
  }
  if (sc.accept_word("d1bar")) return make_d1bar(spec, permissive);
  if (sc.accept_word("d1")) return make_d1(spec, permissive);
  if (sc.accept_word("d2")) return make_d2(spec, permissive);
  if (sc.accept_word("dt1")) return make_dt1(spec, permissive);
  if (sc.accept_word("dt2")) return make_dt2(spec, permissive);
  if (sc.accept_word("0")) return Derivation(spec);
  sc.fail("unknown derivation term");
}

Derivation parse_term(Scanner& sc, const SpecPtr& spec, bool permissive) {
  Rat factor(1);
  // A bare "0" is the zero derivation, not a factor.
  if (sc.at_digit()) {
    Scanner probe = sc;
    std::string_view tok = probe.rat_token();
    if (!(tok == "0" && (probe.done() || probe.accept('+') || probe.accept('-')))) {
      factor = parse_rat(sc.rat_token());
      sc.accept('*');
    }
  }
  return factor * parse_atom(sc, spec, permissive);
}

}  // namespace

Derivation parse_derivation(const SpecPtr& spec, std::string_view text, bool permissive_zero) {
  Scanner sc{text};
  if (sc.done()) sc.fail("empty derivation");
  Rat sign(1);
  if (sc.accept('-')) sign = -1;
  else sc.accept('+');
  Derivation total = sign * parse_term(sc, spec, permissive_zero);
  while (!sc.done()) {
    if (sc.accept('+')) sign = 1;
    else if (sc.accept('-')) sign = -1;
    else sc.fail("expected '+' or '-'");
    total += sign * parse_term(sc, spec, permissive_zero);
  }
  return total;
}

}  // namespace blockalg
