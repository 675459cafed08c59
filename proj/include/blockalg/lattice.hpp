#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "blockalg/rational.hpp"

namespace blockalg {

/// A finitely generated additive subgroup Γ of ℚ².
///
/// The basis is kept in echelon form:
///   rank 2: {(c,s), (0,h)} with c > 0, h > 0, 0 <= s < h
///   rank 1: {(c,s)} with c > 0, or {(0,h)} with h > 0
///   rank 0: {}
/// so two lattices are equal iff their bases are equal.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::vector<Vec2> generators);

  const std::vector<Vec2>& generators() const { return generators_; }
  const std::vector<Vec2>& basis() const { return basis_; }
  int rank() const { return static_cast<int>(basis_.size()); }

  bool contains(const Vec2& v) const;
  /// Integer coordinates of v against basis(), or nullopt if v is not a member.
  std::optional<std::vector<Int>> coordinates(const Vec2& v) const;
  Vec2 combine(const std::vector<Int>& coords) const;

  /// Nonnegative generator of the cyclic group π_p(Γ) ⊂ ℚ.
  Rat proj_generator(int p) const;

  /// Echelon data: c = first-coordinate generator (0 if π₁(Γ)=0), s, h.
  /// For rank 1 with c > 0, h = 0 and s is the second coordinate of the basis vector.
  struct Echelon {
    Rat c;
    Rat s;
    Rat h;
  };
  Echelon echelon() const;

  std::string to_string() const;

 private:
  std::vector<Vec2> generators_;
  std::vector<Vec2> basis_;
};

/// Mutual containment of bases.
bool lattice_equals(const Lattice& a, const Lattice& b);

/// ℤ-linear map Γ → ℚ, stored as its values on basis().
struct GroupHom {
  std::vector<Rat> values;
};

/// Throws Error(NotInLattice) when v ∉ L.
Rat hom_eval(const GroupHom& mu, const Lattice& lattice, const Vec2& v);
/// The projection π_p restricted to Γ.
GroupHom projection_hom(const Lattice& lattice, int p);

enum class ShearGroup { G1, G2 };

/// The matrix ((a,b),(0,1)); G2 forces b = 0.
struct ShearScale {
  Rat a;
  Rat b;
  ShearGroup group = ShearGroup::G1;

  ShearScale(Rat a_, Rat b_, ShearGroup g = ShearGroup::G1);
};

/// g(v) = v·g⁻¹ = (v₁/a, v₂ − v₁b/a).
Vec2 apply_group_element(const ShearScale& g, const Vec2& v);

/// The affine-linear map (β₁,β₂) ↦ (aβ₁, β₂ + bβ₁), a ≠ 0.
struct ShearMap {
  Rat a{1};
  Rat b{0};

  Vec2 operator()(const Vec2& v) const { return {a * v.c1, v.c2 + b * v.c1}; }
  ShearMap inverse() const { return {Rat(1) / a, -b / a}; }
  /// (this ∘ inner)(v) = this(inner(v)).
  ShearMap after(const ShearMap& inner) const { return {a * inner.a, inner.b + b * inner.a}; }
};

/// Throws Error(InvalidArgument) when a = 0.
Lattice map_lattice(const ShearMap& m, const Lattice& lattice);

enum class CanonShape { R0, R1X, R1Y, R2 };

/// Complete orbit invariant of a lattice under G1 or G2.
///   R0                     trivial group
///   R1X  [G2: |s|]         rank 1, π₁ ≠ 0
///   R1Y  h                 rank 1 inside {0}×ℚ (fixed by both groups)
///   R2   h [G2: s*]        rank 2; s* = min(s mod h, −s mod h)
struct CanonicalDescriptor {
  CanonShape shape = CanonShape::R0;
  std::vector<Rat> params;

  friend bool operator==(const CanonicalDescriptor&, const CanonicalDescriptor&) = default;
  std::string to_string() const;
};

CanonicalDescriptor canonical_form(const Lattice& lattice, ShearGroup group);

struct OmegaClass {
  bool in_omega1 = false;
  bool in_omega2 = false;
  bool in_omega3 = false;
  bool in_omega4 = true;

  friend bool operator==(const OmegaClass&, const OmegaClass&) = default;
};

OmegaClass omega_class(const Lattice& lattice);

}  // namespace blockalg
