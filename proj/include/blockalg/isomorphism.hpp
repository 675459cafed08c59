#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "blockalg/core.hpp"
#include "blockalg/lattice.hpp"

namespace blockalg {

/// φ: (β₁,β₂) ↦ (aβ₁, β₂ + bβ₁), a ≠ 0.
using IsoParams = ShearMap;

/// J = ℕ × {0}: the only case where an isomorphism needs b = 0.
inline bool b_must_vanish(const JSpec& j) { return j.nat(1) && !j.nat(2); }

Vec2 phi_apply(const IsoParams& params, const Vec2& v);

/// J_A = J_B, a ≠ 0, b = 0 where required, and φ restricts to a bijection Γ_A → Γ_B.
bool phi_check(const IsoParams& params, const AlgebraSpec& a, const AlgebraSpec& b);

/// ψ(x^{β,j}) = a⁻¹ Σ_k C(j₁,k) aᵏ b^{j₁−k} x'^{φ(β),(k, j₁−k+j₂)}, reduced in
/// the target, i.e. a⁻¹x'^{φ(β)}(a t'₁ + b t'₂)^{j₁}(t'₂)^{j₂}.
/// Throws Error(PhiCheckFailed) unless phi_check(params, *u.spec(), *target).
Element psi_apply(const IsoParams& params, const SpecPtr& target, const Element& u);

using ElementMap = std::function<Element(const Element&)>;

struct HomFailure {
  Element u;
  Element v;
  Element lhs;  // [ψ(u), ψ(v)]
  Element rhs;  // ψ([u, v])
};

struct PsiReport {
  std::size_t checked = 0;
  std::vector<HomFailure> failures;
  /// Window indices whose image is not a^{j₁−1}x'^{φ(β),j} plus strictly lower terms.
  std::vector<BasisIdx> triangularity_failures;
  bool ok() const { return failures.empty() && triangularity_failures.empty(); }
};

/// Checks [ψu, ψv] = ψ[u, v] on each pair and triangularity of ψ on the
/// (K, L) window of the source. Throws Error(PhiCheckFailed).
PsiReport psi_check(const IsoParams& params, const SpecPtr& source, const SpecPtr& target,
                    const std::vector<std::pair<Element, Element>>& pairs, int K, int L);
/// Same checks for an arbitrary candidate map (used to exercise the checker).
PsiReport psi_check_map(const ElementMap& psi, const IsoParams& params, const SpecPtr& source,
                        const SpecPtr& target, const std::vector<std::pair<Element, Element>>& pairs, int K,
                        int L);

enum class NotIsoReason { JMismatch, Pi1ZeroRigidity, LatticeInvariantMismatch };
const char* reason_tag(NotIsoReason r);

struct IsoVerdict {
  bool found = false;
  IsoParams params;
  NotIsoReason reason = NotIsoReason::JMismatch;

  /// {"verdict":"found","a":"3","b":"1"} or {"verdict":"not_isomorphic","reason":"j_mismatch"}
  std::string to_json() const;
};

/// Exact decision for finitely generated Γ. Found parameters are always
/// re-verified with phi_check. Throws Error(SpecInvalid) for Witt-degenerate specs.
IsoVerdict decide_iso(const AlgebraSpec& a, const AlgebraSpec& b);

struct ModuliKey {
  int component = 0;  // 1..4 for J = {0}, ℕ×{0}, {0}×ℕ, ℕ²
  CanonicalDescriptor descriptor;

  friend bool operator==(const ModuliKey&, const ModuliKey&) = default;
  std::string to_string() const;
};

/// Throws Error(WittDegenerate) when π₂(Γ) = J₂ = {0}.
ModuliKey moduli_key(const AlgebraSpec& spec);

}  // namespace blockalg
