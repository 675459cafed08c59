#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blockalg/lattice.hpp"
#include "blockalg/rational.hpp"

namespace blockalg {

enum class JType { Zero, Nat };

/// J = J₁ × J₂ with J_p ∈ {{0}, ℕ}.
struct JSpec {
  JType j1 = JType::Nat;
  JType j2 = JType::Nat;

  JType operator[](int p) const { return p == 1 ? j1 : j2; }
  bool nat(int p) const { return (*this)[p] == JType::Nat; }
  bool is_zero() const { return j1 == JType::Zero && j2 == JType::Zero; }
  friend bool operator==(const JSpec&, const JSpec&) = default;
  std::string to_string() const;
};

struct MultiIndex {
  long i1 = 0;
  long i2 = 0;

  long operator[](int p) const { return p == 1 ? i1 : i2; }
  long level() const { return i1 + i2; }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Total order on J: higher level wins, ties broken by larger i₁.
std::strong_ordering index_cmp(const MultiIndex& a, const MultiIndex& b);

struct BasisIdx {
  Vec2 alpha;
  MultiIndex idx;

  friend bool operator==(const BasisIdx&, const BasisIdx&) = default;
  std::string to_string() const;
};

/// Term order for storage and printing: degree ascending (lexicographic on
/// (α₁,α₂), which coincides with lexicographic order on echelon lattice
/// coordinates since c, h > 0), then multi-index descending.
struct BasisOrder {
  bool operator()(const BasisIdx& a, const BasisIdx& b) const {
    if (auto c = a.alpha <=> b.alpha; c != 0) return c < 0;
    return index_cmp(a.idx, b.idx) > 0;
  }
};

using Terms = std::map<BasisIdx, Rat, BasisOrder>;

/// The data (Γ, J) with the flags derived from it.
struct AlgebraSpec {
  Lattice gamma;
  JSpec j;
  bool has_sigma1 = false;
  bool has_sigma2 = false;
  /// J = {0} and σ₂ ∈ Γ: the algebra is the derived subalgebra spanned over Γ∖{σ₁,σ₂}.
  bool simple_part = false;
  /// π₂(Γ) = J₂ = {0}: rank-one generalized Witt type, outside the classification.
  bool witt_degenerate = false;

  bool index_in_j(const MultiIndex& i) const;
  /// Index removed by the quotient: (σ₁,0), and σ₁,σ₂ entirely in the simple part.
  bool excluded(const BasisIdx& b) const;
  /// Member of the basis B.
  bool is_basis(const BasisIdx& b) const;
  std::string summary() const;
};

using SpecPtr = std::shared_ptr<const AlgebraSpec>;

bool same_algebra(const AlgebraSpec& a, const AlgebraSpec& b);

/// Throws Error(Condition11Violated) when π₁(Γ) = 0 with J₁ = {0}. A vanishing
/// π₂(Γ) with J₂ = {0} is accepted and flagged as witt_degenerate.
SpecPtr spec_validate(const Lattice& gamma, JSpec j);
/// ℬ(Γ, ℕ²) over the same Γ; hosts x^{σ₁,1_[p]} for the outer derivations.
SpecPtr extension_spec(const AlgebraSpec& spec);

/// A finite linear combination of basis monomials x^{α,i}. The same type
/// serves the associative algebra 𝒜₂ (unreduced) and the quotient ℬ (after
/// reduce); each operation states which view it takes.
class Element {
 public:
  explicit Element(SpecPtr spec) : spec_(std::move(spec)) {}

  const SpecPtr& spec() const { return spec_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rat coeff(const BasisIdx& b) const;

  /// Adds c·x^{α,(i1,i2)}. Indices with a negative component, or a positive
  /// component where J_p = {0}, denote zero and are dropped here.
  void emit(const Vec2& alpha, long i1, long i2, const Rat& c);
  void emit(const BasisIdx& b, const Rat& c) { emit(b.alpha, b.idx.i1, b.idx.i2, c); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Rat& k);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Rat& k, Element a) { return a *= k; }
  friend Element operator-(Element a) { return a *= Rat(-1); }
  friend bool operator==(const Element& a, const Element& b);

 private:
  SpecPtr spec_;
  Terms terms_;
};

/// Throws Error(SpecMismatch) unless a and b live over the same (Γ, J).
void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b);

/// c·x^{α,i} without quotient reduction (an 𝒜₂ element).
Element monomial(const SpecPtr& spec, const BasisIdx& b, const Rat& c = Rat(1));
Element monomial(const SpecPtr& spec, const Vec2& alpha, long i1, long i2, const Rat& c = Rat(1));

/// Validating constructor for user-supplied terms. Throws IndexOutsideGamma /
/// IndexOutsideJ, then applies the quotient.
Element reduce(const SpecPtr& spec, const std::vector<std::pair<BasisIdx, Rat>>& raw);
/// Quotient projection 𝒜₂ → ℬ: drops (σ₁,0), and σ₁,σ₂ in the simple part.
Element reduce(const Element& raw);

/// Product of 𝒜₂: x^{α,i}·x^{β,j} = x^{α+β,i+j}.
Element assoc_mul(const Element& u, const Element& v);
/// ∂_p(x^{α,i}) = α_p x^{α,i} + i_p x^{α,i−1_[p]} on 𝒜₂.
Element partial(const Element& u, int p);
/// u ⊙ v = ∂₁(u)(∂₂(v) − v) on 𝒜₂.
Element odot(const Element& u, const Element& v);
/// x^{α,i} ⊙ x^{β,j} from the four-case closed form (independent of odot).
Element odot_closed_form(const SpecPtr& spec, const BasisIdx& a, const BasisIdx& b);
/// Bracket on 𝒜₂ before the quotient.
Element bracket_raw(const Element& u, const Element& v);
/// Lie bracket of ℬ.
Element bracket(const Element& u, const Element& v);

Element grade_component(const Element& u, const Vec2& alpha);
std::optional<std::pair<BasisIdx, Rat>> leading_term(const Element& u, const Vec2& alpha);

/// Valid basis indices with α = Σ kᵢ·basisᵢ, |kᵢ| ≤ K, and level ≤ L, in term order.
std::vector<BasisIdx> enumerate_window(const AlgebraSpec& spec, int K, int L);

}  // namespace blockalg
