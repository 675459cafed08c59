#include "blockalg/rational.hpp"

#include <cctype>

#include "blockalg/error.hpp"

namespace blockalg {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotInLattice: return "NotInLattice";
    case ErrorCode::Condition11Violated: return "Condition11Violated";
    case ErrorCode::IndexOutsideGamma: return "IndexOutsideGamma";
    case ErrorCode::IndexOutsideJ: return "IndexOutsideJ";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::UndefinedInThisAlgebra: return "UndefinedInThisAlgebra";
    case ErrorCode::AlphaNotInGamma: return "AlphaNotInGamma";
    case ErrorCode::PhiCheckFailed: return "PhiCheckFailed";
    case ErrorCode::WittDegenerate: return "WittDegenerate";
    case ErrorCode::ZeroSeed: return "ZeroSeed";
  }
  return "Error";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  Int n(std::string(num), 10);
  Int d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rat r(negative ? Int(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

std::string to_string(const Vec2& v) { return "(" + to_string(v.c1) + "," + to_string(v.c2) + ")"; }

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Rat rat_gcd(const Rat& a, const Rat& b) {
  // gcd(p/q, r/s) = gcd(p·s, r·q) / (q·s)
  Int num;
  Int ps = a.get_num() * b.get_den();
  Int rq = b.get_num() * a.get_den();
  mpz_gcd(num.get_mpz_t(), ps.get_mpz_t(), rq.get_mpz_t());
  Rat g(num, Int(a.get_den() * b.get_den()));
  g.canonicalize();
  return g;
}

Rat rat_mod(const Rat& x, const Rat& m) {
  Rat q = x / m;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return x - Rat(fl) * m;
}

Rat factorial(unsigned n) {
  Int f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rat(f);
}

Rat pow(const Rat& base, long exponent) {
  if (exponent < 0) return pow(Rat(1) / base, -exponent);
  Rat result(1);
  Rat b = base;
  unsigned long e = static_cast<unsigned long>(exponent);
  while (e) {
    if (e & 1) result *= b;
    b *= b;
    e >>= 1;
  }
  return result;
}

Rat binomial(unsigned n, unsigned k) {
  Int c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return Rat(c);
}

}  // namespace blockalg
