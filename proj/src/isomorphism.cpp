#include "blockalg/isomorphism.hpp"

#include <json.hpp>

#include "blockalg/error.hpp"

namespace blockalg {

Vec2 phi_apply(const IsoParams& params, const Vec2& v) { return params(v); }

bool phi_check(const IsoParams& params, const AlgebraSpec& a, const AlgebraSpec& b) {
  if (!(a.j == b.j)) return false;
  if (sgn(params.a) == 0) return false;
  if (b_must_vanish(a.j) && sgn(params.b) != 0) return false;
  for (const auto& v : a.gamma.basis())
    if (!b.gamma.contains(params(v))) return false;
  const IsoParams inv = params.inverse();
  for (const auto& v : b.gamma.basis())
    if (!a.gamma.contains(inv(v))) return false;
  return true;
}

Element psi_apply(const IsoParams& params, const SpecPtr& target, const Element& u) {
  if (!phi_check(params, *u.spec(), *target))
    throw Error(ErrorCode::PhiCheckFailed, "phi(a=" + to_string(params.a) + ",b=" + to_string(params.b) +
                                               ") is not an isomorphism " + u.spec()->summary() + " -> " +
                                               target->summary());
  Element out(target);
  const Rat inv_a = Rat(1) / params.a;
  for (const auto& [bi, c] : u.terms()) {
    const Vec2 image = params(bi.alpha);
    const long j1 = bi.idx.i1, j2 = bi.idx.i2;
    for (long k = 0; k <= j1; ++k) {
      Rat coeff = c * inv_a * binomial(static_cast<unsigned>(j1), static_cast<unsigned>(k)) * pow(params.a, k) *
                  pow(params.b, j1 - k);
      out.emit(image, k, j1 - k + j2, coeff);
    }
  }
  return reduce(out);
}

PsiReport psi_check_map(const ElementMap& psi, const IsoParams& params, const SpecPtr& source,
                        const SpecPtr& target, const std::vector<std::pair<Element, Element>>& pairs, int K,
                        int L) {
  if (!phi_check(params, *source, *target))
    throw Error(ErrorCode::PhiCheckFailed, source->summary() + " -> " + target->summary());
  PsiReport report;
  for (const auto& [u, v] : pairs) {
    ++report.checked;
    Element lhs = bracket(psi(u), psi(v));
    Element rhs = psi(bracket(u, v));
    if (!(lhs == rhs)) report.failures.push_back({u, v, std::move(lhs), std::move(rhs)});
  }
  for (const auto& b : enumerate_window(*source, K, L)) {
    const Element image = psi(monomial(source, b));
    const Vec2 deg = params(b.alpha);
    const Rat diagonal = pow(params.a, b.idx.i1 - 1);
    bool ok = image.coeff(BasisIdx{deg, b.idx}) == diagonal;
    for (const auto& [t, c] : image.terms()) {
      if (!(t.alpha == deg)) ok = false;
      else if (!(t.idx == b.idx) && index_cmp(t.idx, b.idx) >= 0) ok = false;
    }
    if (!ok) report.triangularity_failures.push_back(b);
  }
  return report;
}

PsiReport psi_check(const IsoParams& params, const SpecPtr& source, const SpecPtr& target,
                    const std::vector<std::pair<Element, Element>>& pairs, int K, int L) {
  return psi_check_map([&](const Element& u) { return psi_apply(params, target, u); }, params, source, target,
                       pairs, K, L);
}

const char* reason_tag(NotIsoReason r) {
  switch (r) {
    case NotIsoReason::JMismatch: return "j_mismatch";
    case NotIsoReason::Pi1ZeroRigidity: return "pi1_zero_rigidity";
    case NotIsoReason::LatticeInvariantMismatch: return "lattice_invariant_mismatch";
  }
  return "unknown";
}

std::string IsoVerdict::to_json() const {
  nlohmann::ordered_json j;
  if (found) {
    j["verdict"] = "found";
    j["a"] = to_string(params.a);
    j["b"] = to_string(params.b);
  } else {
    j["verdict"] = "not_isomorphic";
    j["reason"] = reason_tag(reason);
  }
  return j.dump();
}

namespace {

IsoVerdict not_iso(NotIsoReason r) {
  IsoVerdict v;
  v.found = false;
  v.reason = r;
  return v;
}

IsoVerdict verified(const IsoParams& p, const AlgebraSpec& a, const AlgebraSpec& b) {
  if (!phi_check(p, a, b))
    throw std::logic_error("decide_iso produced parameters that fail phi_check: a=" + to_string(p.a) +
                           " b=" + to_string(p.b));
  IsoVerdict v;
  v.found = true;
  v.params = p;
  return v;
}

}  // namespace

IsoVerdict decide_iso(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (a.witt_degenerate || b.witt_degenerate)
    throw Error(ErrorCode::SpecInvalid, "Witt-degenerate algebras are outside the classification");
  if (!(a.j == b.j)) return not_iso(NotIsoReason::JMismatch);

  // φ fixes {0}×ℚ pointwise and preserves π₁ = 0.
  const bool a_flat = sgn(a.gamma.proj_generator(1)) == 0;
  const bool b_flat = sgn(b.gamma.proj_generator(1)) == 0;
  if (a_flat || b_flat) {
    if (a_flat && b_flat && lattice_equals(a.gamma, b.gamma)) return verified(IsoParams{}, a, b);
    return not_iso(NotIsoReason::Pi1ZeroRigidity);
  }

  if (a.gamma.rank() != b.gamma.rank()) return not_iso(NotIsoReason::LatticeInvariantMismatch);
  const auto ea = a.gamma.echelon();
  const auto eb = b.gamma.echelon();
  // Γ ∩ ker π₁ is fixed pointwise by φ, so h is an invariant.
  if (a.gamma.rank() == 2 && ea.h != eb.h) return not_iso(NotIsoReason::LatticeInvariantMismatch);

  if (!b_must_vanish(a.j)) {
    // Send (c,s) to (c',s') exactly; (0,h) is fixed.
    IsoParams p{eb.c / ea.c, (eb.s - ea.s) / ea.c};
    return verified(p, a, b);
  }
  for (int eps : {1, -1}) {
    IsoParams p{Rat(eps) * eb.c / ea.c, Rat(0)};
    if (lattice_equals(map_lattice(p, a.gamma), b.gamma)) return verified(p, a, b);
  }
  return not_iso(NotIsoReason::LatticeInvariantMismatch);
}

std::string ModuliKey::to_string() const {
  return "(" + std::to_string(component) + ", " + descriptor.to_string() + ")";
}

ModuliKey moduli_key(const AlgebraSpec& spec) {
  if (spec.witt_degenerate)
    throw Error(ErrorCode::WittDegenerate, "pi_2(Gamma) = J_2 = {0}: generalized Witt type, not classified here");
  ModuliKey key;
  const bool n1 = spec.j.nat(1), n2 = spec.j.nat(2);
  key.component = !n1 && !n2 ? 1 : (n1 && !n2 ? 2 : (!n1 && n2 ? 3 : 4));
  key.descriptor = canonical_form(spec.gamma, key.component == 2 ? ShearGroup::G2 : ShearGroup::G1);
  return key;
}

}  // namespace blockalg
