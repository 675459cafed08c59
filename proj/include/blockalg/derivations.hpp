#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockalg/core.hpp"

namespace blockalg {

/// ad_u + d_μ + f₁d₁ + f₂d̄₁ + f₃d₂ + f₄∂_{t₂} + f₅∂_{t₁}.
///
/// The named outer operators act on x^{β,j} as
///   d₁     −β₁x^{σ₁+β,j} − j₁x^{σ₁+β,j−1_[1]}       (σ₁ ∈ Γ, J₂ = {0})
///   d̄₁     (β₂−1)x^{σ₁+β,j} + j₂x^{σ₁+β,j−1_[2]}    (σ₁ ∈ Γ, J₁ = {0})
///   d₂     −β₁x^{σ₂+β,0}                             (σ₂ ∈ Γ, J = {0})
///   d_μ    μ(β)x^{β,j}
///   ∂_{t_p} j_p x^{β,j−1_[p]}                        (J_p = ℕ)
/// followed by the quotient reduction.
struct Derivation {
  SpecPtr spec;
  Element inner;
  std::optional<GroupHom> mu;
  Rat f1{0};  // d₁
  Rat f2{0};  // d̄₁
  Rat f3{0};  // d₂
  Rat f4{0};  // ∂_{t₂}
  Rat f5{0};  // ∂_{t₁}

  explicit Derivation(SpecPtr s) : spec(s), inner(std::move(s)) {}

  bool is_zero() const;
  Derivation& operator+=(const Derivation& o);
  Derivation& operator*=(const Rat& k);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a += Rat(-1) * b; }
  friend Derivation operator*(const Rat& k, Derivation a) { return a *= k; }
};

/// Why a named operator is undefined in this algebra, or nullopt if defined.
std::optional<std::string> d1_undefined_reason(const AlgebraSpec& spec);
std::optional<std::string> d1bar_undefined_reason(const AlgebraSpec& spec);
std::optional<std::string> d2_undefined_reason(const AlgebraSpec& spec);
std::optional<std::string> dt1_undefined_reason(const AlgebraSpec& spec);
std::optional<std::string> dt2_undefined_reason(const AlgebraSpec& spec);

Derivation ad(const Element& u);
// Each throws Error(UndefinedInThisAlgebra) when its side condition fails,
// unless permissive_zero is set, in which case the zero derivation is returned.
Derivation make_d1(const SpecPtr& spec, bool permissive_zero = false);
Derivation make_d1bar(const SpecPtr& spec, bool permissive_zero = false);
Derivation make_d2(const SpecPtr& spec, bool permissive_zero = false);
Derivation make_dt1(const SpecPtr& spec, bool permissive_zero = false);
Derivation make_dt2(const SpecPtr& spec, bool permissive_zero = false);
/// Throws Error(InvalidArgument) if mu has the wrong number of values.
Derivation make_dmu(const SpecPtr& spec, GroupHom mu);

/// Throws Error(SpecMismatch) if D and v live over different algebras.
Element apply(const Derivation& d, const Element& v);

using LinearOp = std::function<Element(const Element&)>;
LinearOp as_operator(const Derivation& d);

/// ad of an element of the extension ℬ(Γ,ℕ²), restricted to ℬ(Γ,J).
/// Throws Error(IndexOutsideJ) if the image leaves ℬ(Γ,J).
Element extension_ad_apply(const BasisIdx& ext_index, const Element& v);

struct LawFailure {
  Element u;
  Element v;
  Element lhs;  // D([u,v])
  Element rhs;  // [D(u),v] + [u,D(v)]
};

struct LawReport {
  std::size_t checked = 0;
  std::vector<LawFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Exact check of D([u,v]) = [D(u),v] + [u,D(v)] on each pair.
LawReport check_derivation_law(const LinearOp& d, const std::vector<std::pair<Element, Element>>& pairs);

/// True iff D(x^{β,j}) ∈ ℬ_{α+β} for every window index (β,j).
bool is_homogeneous(const LinearOp& d, const SpecPtr& spec, const Vec2& alpha, const std::vector<BasisIdx>& window);

/// Least k in [1, cap] with D^k(v) = 0, or nullopt when the cap is exceeded.
/// D¹(0) = 0, so v = 0 yields 1.
std::optional<int> nilpotence_degree(const LinearOp& d, const Element& v, int cap);

struct GrowthStep {
  int step = 0;
  BasisIdx lead;
  Rat coeff;
};

/// One-sided verdict on the orbit v, D(v), ..., D^cap(v).
struct FinitenessVerdict {
  enum class Kind { ClosureDim, GrowthWitness, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Dimension of span{D^k(v)} when it closed.
  int dim = 0;
  /// Extremal leading term of every iterate (GrowthWitness only).
  std::vector<GrowthStep> trace;
};

/// ClosureDim(k) when D^k(v) falls into the span of earlier iterates (k ≤ cap).
/// Otherwise GrowthWitness if the extremal leading term (Γ-degree first, then
/// multi-index) strictly escalates at every step, else Inconclusive.
FinitenessVerdict local_finiteness_probe(const LinearOp& d, const Element& v, int cap);

/// Generators of (Der ℬ)_α over the window: ad(x^{α,i}) for window indices i,
/// plus d_μ for a basis of Hom* and ∂_{t₂} when α = 0, d₁/d̄₁ when α = σ₁,
/// d₂ when α = σ₂ (each only where defined). Throws Error(AlphaNotInGamma).
std::vector<Derivation> der_component_generators(const SpecPtr& spec, const Vec2& alpha, int L);

/// Derivation expression: terms `ad(<element>)`, `dmu(<rat>,...)`, `d1`,
/// `d1bar`, `d2`, `dt1`, `dt2`, each with an optional rational factor
/// (`2*dt2`, `1/2 d1`), joined by '+' / '-'. Throws Error(Parse) and the
/// errors of the named constructors.
Derivation parse_derivation(const SpecPtr& spec, std::string_view text, bool permissive_zero = false);

/// Basis of the chosen complement Hom* of 𝔽π₁: when π₁(Γ) ≠ 0 and J₁ = {0},
/// the homomorphisms vanishing on the first echelon basis vector; otherwise all of Hom.
std::vector<GroupHom> hom_star_basis(const AlgebraSpec& spec);

}  // namespace blockalg
