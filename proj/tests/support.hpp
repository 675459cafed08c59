#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "blockalg/core.hpp"
#include "blockalg/literal.hpp"

namespace testsupport {

using namespace blockalg;

inline Rat R(const char* s) { return parse_rat(s); }
inline Vec2 V(long a, long b) { return {Rat(a), Rat(b)}; }
inline Vec2 V(std::string_view a, std::string_view b) { return {parse_rat(std::string(a)), parse_rat(std::string(b))}; }

inline Lattice Z2() { return Lattice({V(1, 0), V(0, 1)}); }

inline SpecPtr spec(const Lattice& gamma, JType j1, JType j2) { return spec_validate(gamma, {j1, j2}); }
inline SpecPtr z2(JType j1 = JType::Nat, JType j2 = JType::Nat) { return spec(Z2(), j1, j2); }

inline Element E(const SpecPtr& s, const char* text) { return parse_element(s, text); }

/// Brute force: is v = sum k_i g_i with every |k_i| <= box?
inline bool span_contains_brute(const std::vector<Vec2>& gens, const Vec2& v, int box = 20) {
  if (gens.empty()) return v.is_zero();
  std::vector<long> k(gens.size(), -box);
  for (;;) {
    Vec2 sum{Rat(0), Rat(0)};
    for (std::size_t i = 0; i < gens.size(); ++i) sum = sum + Rat(k[i]) * gens[i];
    if (sum == v) return true;
    std::size_t i = 0;
    while (i < k.size() && k[i] == box) k[i++] = -box;
    if (i == k.size()) return false;
    ++k[i];
  }
}

}  // namespace testsupport
