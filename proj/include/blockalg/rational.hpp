#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace blockalg {

/// Exact rational over arbitrary-precision integers. mpq_class keeps the
/// value canonical (reduced, positive denominator) after every arithmetic op.
using Rat = mpq_class;
using Int = mpz_class;

/// Parses "p" or "p/q" (optional leading sign, q > 0). Throws Error(Parse).
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

bool is_integer(const Rat& r);
/// Nonnegative generator of the cyclic group a·ℤ + b·ℤ ⊂ ℚ.
Rat rat_gcd(const Rat& a, const Rat& b);
/// x mod m in [0, m) for m > 0.
Rat rat_mod(const Rat& x, const Rat& m);
Rat factorial(unsigned n);
Rat pow(const Rat& base, long exponent);
Rat binomial(unsigned n, unsigned k);

inline std::strong_ordering rat_cmp(const Rat& a, const Rat& b) {
  int c = cmp(a, b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

/// A point of ℚ².
struct Vec2 {
  Rat c1;
  Rat c2;

  Vec2() = default;
  Vec2(Rat a, Rat b) : c1(std::move(a)), c2(std::move(b)) {}

  const Rat& operator[](int p) const { return p == 1 ? c1 : c2; }
  bool is_zero() const { return sgn(c1) == 0 && sgn(c2) == 0; }

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.c1 + b.c1, a.c2 + b.c2}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.c1 - b.c1, a.c2 - b.c2}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.c1, -a.c2}; }
  friend Vec2 operator*(const Rat& k, const Vec2& a) { return {k * a.c1, k * a.c2}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.c1 == b.c1 && a.c2 == b.c2; }
  // Lexicographic; compatible with the group structure of ℚ².
  friend std::strong_ordering operator<=>(const Vec2& a, const Vec2& b) {
    if (auto c = rat_cmp(a.c1, b.c1); c != 0) return c;
    return rat_cmp(a.c2, b.c2);
  }
};

std::string to_string(const Vec2& v);

/// σ₁ = (0,1) and σ₂ = (0,2).
inline Vec2 sigma1() { return {Rat(0), Rat(1)}; }
inline Vec2 sigma2() { return {Rat(0), Rat(2)}; }

}  // namespace blockalg
