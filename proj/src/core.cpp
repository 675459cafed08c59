#include "blockalg/core.hpp"

#include "blockalg/error.hpp"

namespace blockalg {

std::string JSpec::to_string() const {
  auto one = [](JType t) { return t == JType::Zero ? "0" : "N"; };
  return std::string("(") + one(j1) + "," + one(j2) + ")";
}

std::strong_ordering index_cmp(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.level() <=> b.level(); c != 0) return c;
  return a.i1 <=> b.i1;
}

std::string BasisIdx::to_string() const {
  return "x[" + blockalg::to_string(alpha.c1) + "," + blockalg::to_string(alpha.c2) + ";" +
         std::to_string(idx.i1) + "," + std::to_string(idx.i2) + "]";
}

bool AlgebraSpec::index_in_j(const MultiIndex& i) const {
  if (i.i1 < 0 || i.i2 < 0) return false;
  if (i.i1 > 0 && !j.nat(1)) return false;
  if (i.i2 > 0 && !j.nat(2)) return false;
  return true;
}

bool AlgebraSpec::excluded(const BasisIdx& b) const {
  if (b.alpha == sigma1() && b.idx == MultiIndex{}) return true;
  if (simple_part && (b.alpha == sigma1() || b.alpha == sigma2())) return true;
  return false;
}

bool AlgebraSpec::is_basis(const BasisIdx& b) const {
  return gamma.contains(b.alpha) && index_in_j(b.idx) && !excluded(b);
}

std::string AlgebraSpec::summary() const {
  std::string out = "Gamma=" + gamma.to_string() + " J=" + j.to_string();
  if (simple_part) out += " simple_part";
  if (witt_degenerate) out += " witt_degenerate";
  return out;
}

bool same_algebra(const AlgebraSpec& a, const AlgebraSpec& b) {
  return a.j == b.j && a.gamma.basis() == b.gamma.basis();
}

void require_same_spec(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (&a != &b && !same_algebra(a, b))
    throw Error(ErrorCode::SpecMismatch, a.summary() + " vs " + b.summary());
}

SpecPtr spec_validate(const Lattice& gamma, JSpec j) {
  auto spec = std::make_shared<AlgebraSpec>();
  spec->gamma = gamma;
  spec->j = j;
  if (j.j1 == JType::Zero && sgn(gamma.proj_generator(1)) == 0)
    throw Error(ErrorCode::Condition11Violated, "p=1: pi_1(Gamma) = 0 while J_1 = {0}");
  spec->has_sigma1 = gamma.contains(sigma1());
  spec->has_sigma2 = gamma.contains(sigma2());
  spec->simple_part = j.is_zero() && spec->has_sigma2;
  spec->witt_degenerate = j.j2 == JType::Zero && sgn(gamma.proj_generator(2)) == 0;
  return spec;
}

SpecPtr extension_spec(const AlgebraSpec& spec) {
  return spec_validate(spec.gamma, JSpec{JType::Nat, JType::Nat});
}

Rat Element::coeff(const BasisIdx& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Element::emit(const Vec2& alpha, long i1, long i2, const Rat& c) {
  if (sgn(c) == 0) return;
  MultiIndex idx{i1, i2};
  if (!spec_->index_in_j(idx)) return;
  auto [it, inserted] = terms_.try_emplace(BasisIdx{alpha, idx}, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  require_same_spec(*spec_, *o.spec_);
  for (const auto& [b, c] : o.terms_) emit(b, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same_spec(*spec_, *o.spec_);
  for (const auto& [b, c] : o.terms_) emit(b, -c);
  return *this;
}

Element& Element::operator*=(const Rat& k) {
  if (sgn(k) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, c] : terms_) c *= k;
  return *this;
}

bool operator==(const Element& a, const Element& b) {
  return same_algebra(*a.spec_, *b.spec_) && a.terms_ == b.terms_;
}

Element monomial(const SpecPtr& spec, const BasisIdx& b, const Rat& c) {
  Element e(spec);
  e.emit(b, c);
  return e;
}

Element monomial(const SpecPtr& spec, const Vec2& alpha, long i1, long i2, const Rat& c) {
  return monomial(spec, BasisIdx{alpha, {i1, i2}}, c);
}

Element reduce(const SpecPtr& spec, const std::vector<std::pair<BasisIdx, Rat>>& raw) {
  Element e(spec);
  for (const auto& [b, c] : raw) {
    if (!spec->gamma.contains(b.alpha))
      throw Error(ErrorCode::IndexOutsideGamma, to_string(b.alpha) + " not in " + spec->gamma.to_string());
    if (!spec->index_in_j(b.idx))
      throw Error(ErrorCode::IndexOutsideJ, b.to_string() + " not in J=" + spec->j.to_string());
    e.emit(b, c);
  }
  return reduce(e);
}

Element reduce(const Element& raw) {
  Element out(raw.spec());
  for (const auto& [b, c] : raw.terms())
    if (!raw.spec()->excluded(b)) out.emit(b, c);
  return out;
}

Element assoc_mul(const Element& u, const Element& v) {
  require_same_spec(*u.spec(), *v.spec());
  Element out(u.spec());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms())
      out.emit(a.alpha + b.alpha, a.idx.i1 + b.idx.i1, a.idx.i2 + b.idx.i2, ca * cb);
  return out;
}

Element partial(const Element& u, int p) {
  Element out(u.spec());
  for (const auto& [b, c] : u.terms()) {
    out.emit(b, c * b.alpha[p]);
    const long ip = b.idx[p];
    if (ip > 0) out.emit(b.alpha, b.idx.i1 - (p == 1), b.idx.i2 - (p == 2), c * Rat(ip));
  }
  return out;
}

Element odot(const Element& u, const Element& v) {
  return assoc_mul(partial(u, 1), partial(v, 2) - v);
}

Element odot_closed_form(const SpecPtr& spec, const BasisIdx& a, const BasisIdx& b) {
  // x^{γ,m} times products of the linear factors (α₁t₁ + i₁) and
  // ((β₂−1)t₂ + j₂), expanded term by term with t_p = x^{0,1_[p]}.
  const Vec2 gamma = a.alpha + b.alpha;
  const long s1 = a.idx.i1 + b.idx.i1;
  const long s2 = a.idx.i2 + b.idx.i2;
  const Rat alpha1 = a.alpha.c1;
  const Rat beta2m1 = b.alpha.c2 - 1;
  const Rat i1(a.idx.i1);
  const Rat j2(b.idx.i2);
  Element out(spec);
  if (s1 > 0 && s2 > 0) {
    // x^{γ,s−𝟙}(α₁t₁ + i₁)((β₂−1)t₂ + j₂)
    const long m1 = s1 - 1, m2 = s2 - 1;
    out.emit(gamma, m1 + 1, m2 + 1, alpha1 * beta2m1);
    out.emit(gamma, m1 + 1, m2, alpha1 * j2);
    out.emit(gamma, m1, m2 + 1, i1 * beta2m1);
    out.emit(gamma, m1, m2, i1 * j2);
  } else if (s1 == 0 && s2 > 0) {
    // α₁x^{γ,s−1_[2]}((β₂−1)t₂ + j₂)
    out.emit(gamma, 0, s2, alpha1 * beta2m1);
    out.emit(gamma, 0, s2 - 1, alpha1 * j2);
  } else if (s1 > 0 && s2 == 0) {
    // (β₂−1)x^{γ,s−1_[1]}(α₁t₁ + i₁)
    out.emit(gamma, s1, 0, beta2m1 * alpha1);
    out.emit(gamma, s1 - 1, 0, beta2m1 * i1);
  } else {
    out.emit(gamma, 0, 0, alpha1 * beta2m1);
  }
  return out;
}

Element bracket_raw(const Element& u, const Element& v) {
  require_same_spec(*u.spec(), *v.spec());
  Element out(u.spec());
  for (const auto& [a, ca] : u.terms()) {
    const Vec2& al = a.alpha;
    const long i1 = a.idx.i1, i2 = a.idx.i2;
    for (const auto& [b, cb] : v.terms()) {
      const Vec2& be = b.alpha;
      const long j1 = b.idx.i1, j2 = b.idx.i2;
      const Vec2 deg = al + be;
      const Rat cc = ca * cb;
      const Rat al2m1 = al.c2 - 1;
      const Rat be2m1 = be.c2 - 1;
      out.emit(deg, i1 + j1, i2 + j2, cc * (al.c1 * be2m1 - be.c1 * al2m1));
      if (i1 + j1 > 0)
        out.emit(deg, i1 + j1 - 1, i2 + j2, cc * (Rat(i1) * be2m1 - Rat(j1) * al2m1));
      if (i2 + j2 > 0)
        out.emit(deg, i1 + j1, i2 + j2 - 1, cc * (al.c1 * Rat(j2) - be.c1 * Rat(i2)));
      if (i1 + j1 > 0 && i2 + j2 > 0)
        out.emit(deg, i1 + j1 - 1, i2 + j2 - 1, cc * Rat(i1 * j2 - j1 * i2));
    }
  }
  return out;
}

Element bracket(const Element& u, const Element& v) { return reduce(bracket_raw(u, v)); }

Element grade_component(const Element& u, const Vec2& alpha) {
  Element out(u.spec());
  for (const auto& [b, c] : u.terms())
    if (b.alpha == alpha) out.emit(b, c);
  return out;
}

std::optional<std::pair<BasisIdx, Rat>> leading_term(const Element& u, const Vec2& alpha) {
  // Within one degree the term order is index-descending, so the first hit leads.
  for (const auto& [b, c] : u.terms())
    if (b.alpha == alpha) return std::make_pair(b, c);
  return std::nullopt;
}

std::vector<BasisIdx> enumerate_window(const AlgebraSpec& spec, int K, int L) {
  std::vector<BasisIdx> out;
  const int rank = spec.gamma.rank();
  std::vector<std::vector<Int>> coords;
  if (rank == 0) {
    coords.push_back({});
  } else if (rank == 1) {
    for (int k = -K; k <= K; ++k) coords.push_back({Int(k)});
  } else {
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) coords.push_back({Int(k1), Int(k2)});
  }
  const long l1 = spec.j.nat(1) ? L : 0;
  const long l2 = spec.j.nat(2) ? L : 0;
  for (const auto& k : coords) {
    const Vec2 alpha = spec.gamma.combine(k);
    for (long level = std::min<long>(L, l1 + l2); level >= 0; --level)
      for (long i1 = std::min(level, l1); i1 >= 0 && level - i1 <= l2; --i1) {
        BasisIdx b{alpha, {i1, level - i1}};
        if (!spec.excluded(b)) out.push_back(b);
      }
  }
  return out;
}

}  // namespace blockalg
