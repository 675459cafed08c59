#include "blockalg/derivations.hpp"

#include "blockalg/error.hpp"
#include "blockalg/span.hpp"

#include <limits>

namespace blockalg {

bool Derivation::is_zero() const {
  auto mu_zero = [&] {
    if (!mu) return true;
    for (const auto& v : mu->values)
      if (sgn(v) != 0) return false;
    return true;
  };
  return inner.is_zero() && mu_zero() && sgn(f1) == 0 && sgn(f2) == 0 && sgn(f3) == 0 && sgn(f4) == 0 &&
         sgn(f5) == 0;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  require_same_spec(*spec, *o.spec);
  inner += o.inner;
  if (o.mu) {
    if (!mu) {
      mu = o.mu;
    } else {
      for (std::size_t i = 0; i < mu->values.size(); ++i) mu->values[i] += o.mu->values[i];
    }
  }
  f1 += o.f1;
  f2 += o.f2;
  f3 += o.f3;
  f4 += o.f4;
  f5 += o.f5;
  return *this;
}

Derivation& Derivation::operator*=(const Rat& k) {
  inner *= k;
  if (mu)
    for (auto& v : mu->values) v *= k;
  f1 *= k;
  f2 *= k;
  f3 *= k;
  f4 *= k;
  f5 *= k;
  return *this;
}

std::optional<std::string> d1_undefined_reason(const AlgebraSpec& spec) {
  if (!spec.has_sigma1) return "d1 needs sigma1=(0,1) in Gamma";
  if (spec.j.nat(2)) return "d1 needs J_2 = {0}";
  return std::nullopt;
}

std::optional<std::string> d1bar_undefined_reason(const AlgebraSpec& spec) {
  if (!spec.has_sigma1) return "d1bar needs sigma1=(0,1) in Gamma";
  if (spec.j.nat(1)) return "d1bar needs J_1 = {0}";
  return std::nullopt;
}

std::optional<std::string> d2_undefined_reason(const AlgebraSpec& spec) {
  if (!spec.has_sigma2) return "d2 needs sigma2=(0,2) in Gamma";
  if (!spec.j.is_zero()) return "d2 needs J = {0}";
  return std::nullopt;
}

std::optional<std::string> dt1_undefined_reason(const AlgebraSpec& spec) {
  if (!spec.j.nat(1)) return "dt1 needs J_1 = N";
  return std::nullopt;
}

std::optional<std::string> dt2_undefined_reason(const AlgebraSpec& spec) {
  if (!spec.j.nat(2)) return "dt2 needs J_2 = N";
  return std::nullopt;
}

Derivation ad(const Element& u) {
  Derivation d(u.spec());
  d.inner = u;
  return d;
}

namespace {

Derivation named(const SpecPtr& spec, const std::optional<std::string>& reason, bool permissive,
                 Rat Derivation::*slot) {
  Derivation d(spec);
  if (reason) {
    if (!permissive) throw Error(ErrorCode::UndefinedInThisAlgebra, *reason);
    return d;
  }
  d.*slot = 1;
  return d;
}

}  // namespace

Derivation make_d1(const SpecPtr& spec, bool permissive_zero) {
  return named(spec, d1_undefined_reason(*spec), permissive_zero, &Derivation::f1);
}
Derivation make_d1bar(const SpecPtr& spec, bool permissive_zero) {
  return named(spec, d1bar_undefined_reason(*spec), permissive_zero, &Derivation::f2);
}
Derivation make_d2(const SpecPtr& spec, bool permissive_zero) {
  return named(spec, d2_undefined_reason(*spec), permissive_zero, &Derivation::f3);
}
Derivation make_dt2(const SpecPtr& spec, bool permissive_zero) {
  return named(spec, dt2_undefined_reason(*spec), permissive_zero, &Derivation::f4);
}
Derivation make_dt1(const SpecPtr& spec, bool permissive_zero) {
  return named(spec, dt1_undefined_reason(*spec), permissive_zero, &Derivation::f5);
}

Derivation make_dmu(const SpecPtr& spec, GroupHom mu) {
  if (mu.values.size() != spec->gamma.basis().size())
    throw Error(ErrorCode::InvalidArgument, "dmu needs " + std::to_string(spec->gamma.rank()) +
                                                " values, one per lattice basis vector");
  Derivation d(spec);
  d.mu = std::move(mu);
  return d;
}

Element apply(const Derivation& d, const Element& v) {
  require_same_spec(*d.spec, *v.spec());
  Element out = d.inner.is_zero() ? Element(v.spec()) : bracket_raw(d.inner, v);
  const Vec2 s1 = sigma1();
  const Vec2 s2 = sigma2();
  for (const auto& [b, c] : v.terms()) {
    const Vec2& beta = b.alpha;
    const long j1 = b.idx.i1, j2 = b.idx.i2;
    if (d.mu) out.emit(b, c * hom_eval(*d.mu, v.spec()->gamma, beta));
    if (sgn(d.f1) != 0) {
      out.emit(s1 + beta, j1, j2, -d.f1 * c * beta.c1);
      out.emit(s1 + beta, j1 - 1, j2, -d.f1 * c * Rat(j1));
    }
    if (sgn(d.f2) != 0) {
      out.emit(s1 + beta, j1, j2, d.f2 * c * (beta.c2 - 1));
      out.emit(s1 + beta, j1, j2 - 1, d.f2 * c * Rat(j2));
    }
    if (sgn(d.f3) != 0) out.emit(s2 + beta, j1, j2, -d.f3 * c * beta.c1);
    if (sgn(d.f4) != 0) out.emit(beta, j1, j2 - 1, d.f4 * c * Rat(j2));
    if (sgn(d.f5) != 0) out.emit(beta, j1 - 1, j2, d.f5 * c * Rat(j1));
  }
  return reduce(out);
}

LinearOp as_operator(const Derivation& d) {
  return [d](const Element& v) { return apply(d, v); };
}

Element extension_ad_apply(const BasisIdx& ext_index, const Element& v) {
  const AlgebraSpec& spec = *v.spec();
  SpecPtr ext = extension_spec(spec);
  Element lifted(ext);
  for (const auto& [b, c] : v.terms()) lifted.emit(b, c);
  Element image = bracket_raw(monomial(ext, ext_index), lifted);
  std::vector<std::pair<BasisIdx, Rat>> raw(image.terms().begin(), image.terms().end());
  return reduce(v.spec(), raw);
}

LawReport check_derivation_law(const LinearOp& d, const std::vector<std::pair<Element, Element>>& pairs) {
  LawReport report;
  for (const auto& [u, v] : pairs) {
    ++report.checked;
    Element lhs = d(bracket(u, v));
    Element rhs = bracket(d(u), v) + bracket(u, d(v));
    if (!(lhs == rhs)) report.failures.push_back({u, v, std::move(lhs), std::move(rhs)});
  }
  return report;
}

bool is_homogeneous(const LinearOp& d, const SpecPtr& spec, const Vec2& alpha,
                    const std::vector<BasisIdx>& window) {
  for (const auto& b : window) {
    Element image = d(monomial(spec, b));
    const Vec2 target = alpha + b.alpha;
    for (const auto& [t, c] : image.terms())
      if (!(t.alpha == target)) return false;
  }
  return true;
}

std::optional<int> nilpotence_degree(const LinearOp& d, const Element& v, int cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "nilpotence cap must be >= 1");
  Element w = v;
  for (int k = 1; k <= cap; ++k) {
    w = d(w);
    if (w.is_zero()) return k;
  }
  return std::nullopt;
}

namespace {

// Leading term at the largest (up) or smallest (down) Γ-degree; within a
// degree the highest multi-index leads.
std::pair<BasisIdx, Rat> extremal_lead(const Element& e, bool up) {
  const auto& t = e.terms();
  if (!up) return *t.begin();
  const Vec2& top = t.rbegin()->first.alpha;
  return *t.lower_bound(BasisIdx{top, {std::numeric_limits<long>::max() / 4, 0}});
}

bool escalates(const std::pair<BasisIdx, Rat>& prev, const std::pair<BasisIdx, Rat>& next, bool up) {
  auto c = next.first.alpha <=> prev.first.alpha;
  if (c != 0) return up ? c > 0 : c < 0;
  return index_cmp(next.first.idx, prev.first.idx) > 0;
}

}  // namespace

FinitenessVerdict local_finiteness_probe(const LinearOp& d, const Element& v, int cap) {
  if (cap < 1) throw Error(ErrorCode::InvalidArgument, "probe cap must be >= 1");
  FinitenessVerdict verdict;
  SparseEchelon span;
  std::vector<Element> iterates;
  Element w = v;
  for (int k = 0; k <= cap; ++k) {
    if (!span.insert(w.terms())) {
      verdict.kind = FinitenessVerdict::Kind::ClosureDim;
      verdict.dim = static_cast<int>(span.dim());
      return verdict;
    }
    iterates.push_back(w);
    if (k < cap) w = d(w);
  }
  for (bool up : {true, false}) {
    std::vector<GrowthStep> trace;
    bool monotone = true;
    for (std::size_t k = 0; k < iterates.size(); ++k) {
      auto lead = extremal_lead(iterates[k], up);
      if (k > 0) {
        std::pair<BasisIdx, Rat> prev{trace.back().lead, trace.back().coeff};
        if (!escalates(prev, lead, up)) {
          monotone = false;
          break;
        }
      }
      trace.push_back({static_cast<int>(k), lead.first, lead.second});
    }
    if (monotone) {
      verdict.kind = FinitenessVerdict::Kind::GrowthWitness;
      verdict.trace = std::move(trace);
      return verdict;
    }
  }
  verdict.kind = FinitenessVerdict::Kind::Inconclusive;
  return verdict;
}

std::vector<GroupHom> hom_star_basis(const AlgebraSpec& spec) {
  const int rank = spec.gamma.rank();
  const bool drop_first = sgn(spec.gamma.proj_generator(1)) != 0 && !spec.j.nat(1);
  std::vector<GroupHom> out;
  for (int k = drop_first ? 1 : 0; k < rank; ++k) {
    GroupHom mu;
    mu.values.assign(rank, Rat(0));
    mu.values[k] = 1;
    out.push_back(std::move(mu));
  }
  return out;
}

std::vector<Derivation> der_component_generators(const SpecPtr& spec, const Vec2& alpha, int L) {
  if (!spec->gamma.contains(alpha))
    throw Error(ErrorCode::AlphaNotInGamma, to_string(alpha) + " not in " + spec->gamma.to_string());
  std::vector<Derivation> out;
  const long l1 = spec->j.nat(1) ? L : 0;
  const long l2 = spec->j.nat(2) ? L : 0;
  for (long level = std::min<long>(L, l1 + l2); level >= 0; --level)
    for (long i1 = std::min(level, l1); i1 >= 0 && level - i1 <= l2; --i1) {
      BasisIdx b{alpha, {i1, level - i1}};
      if (!spec->excluded(b)) out.push_back(ad(monomial(spec, b)));
    }
  if (alpha.is_zero()) {
    for (auto& mu : hom_star_basis(*spec)) out.push_back(make_dmu(spec, std::move(mu)));
    if (!dt2_undefined_reason(*spec)) out.push_back(make_dt2(spec));
  }
  if (alpha == sigma1()) {
    if (!d1_undefined_reason(*spec)) out.push_back(make_d1(spec));
    if (!d1bar_undefined_reason(*spec)) out.push_back(make_d1bar(spec));
  }
  if (alpha == sigma2() && !d2_undefined_reason(*spec)) out.push_back(make_d2(spec));
  return out;
}

}  // namespace blockalg
