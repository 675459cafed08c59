#include "blockalg/harness.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "blockalg/error.hpp"
#include "blockalg/literal.hpp"

namespace blockalg {

namespace {

// Sub-check streams; every (stream, trial) pair seeds its own generator.
enum Stream : std::uint32_t {
  kJacobi = 1,
  kPairs = 2,
  kOracles = 3,
  kSimpleClosure = 4,
  kDerivationLaw = 5,
  kDerivationChoice = 6,
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<BasisIdx> with_zero_first_coordinate(const std::vector<BasisIdx>& window) {
  std::vector<BasisIdx> out;
  for (const auto& b : window)
    if (sgn(b.alpha.c1) == 0) out.push_back(b);
  return out;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  engine_.seed(seq);
}

std::uint64_t TrialRng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

Element random_element(const SpecPtr& spec, const std::vector<BasisIdx>& window, TrialRng& rng) {
  static const Rat kCoeffs[] = {Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(1, 2), Rat(-1, 2), Rat(3, 2), Rat(-3, 2)};
  Element e(spec);
  const long terms = rng.between(1, 4);
  for (long t = 0; t < terms; ++t) {
    const BasisIdx& b = window[rng.below(window.size())];
    e.emit(b, kCoeffs[rng.below(8)]);
  }
  return reduce(e);
}

Rat random_nonzero_rat(TrialRng& rng) {
  long num = rng.between(1, 3);
  if (rng.below(2)) num = -num;
  const long den = rng.between(1, 3);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Lattice random_lattice(TrialRng& rng, int min_rank) {
  for (;;) {
    std::vector<Vec2> gens;
    const long count = rng.between(1, 3);
    const int shape = static_cast<int>(rng.below(4));
    for (long g = 0; g < count; ++g) {
      const long xn = rng.between(-4, 4), xd = rng.between(1, 2);
      const long yn = rng.between(-4, 4), yd = rng.between(1, 2);
      Rat x(xn, xd), y(yn, yd);
      x.canonicalize();
      y.canonicalize();
      if (shape == 0) x = 0;  // lattices inside {0}×ℚ
      gens.push_back({x, y});
    }
    Lattice l(std::move(gens));
    if (l.rank() >= min_rank) return l;
  }
}

std::optional<JSpec> random_valid_j(const Lattice& gamma, TrialRng& rng) {
  std::vector<JSpec> ok;
  const bool p1 = sgn(gamma.proj_generator(1)) != 0;
  const bool p2 = sgn(gamma.proj_generator(2)) != 0;
  for (JType j1 : {JType::Zero, JType::Nat})
    for (JType j2 : {JType::Zero, JType::Nat}) {
      if (j1 == JType::Zero && !p1) continue;
      if (j2 == JType::Zero && !p2) continue;
      ok.push_back({j1, j2});
    }
  if (ok.empty()) return std::nullopt;
  return ok[rng.below(ok.size())];
}

void SuiteReport::finalize() {
  std::stable_sort(failures.begin(), failures.end(), [](const FailureRecord& a, const FailureRecord& b) {
    if (a.check != b.check) return a.check < b.check;
    return a.trial < b.trial;
  });
}

void SuiteReport::merge(const SuiteReport& other) {
  trials += other.trials;
  passes += other.passes;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  wall_ms += other.wall_ms;
  finalize();
}

std::string SuiteReport::to_text(bool with_timing) const {
  std::ostringstream out;
  out << "suite: " << suite << "\n"
      << "spec: " << spec_summary << "\n"
      << "seed: " << seed << "\n"
      << "trials: " << trials << "\n"
      << "passes: " << passes << "\n"
      << "failures: " << failures.size() << "\n";
  if (with_timing) out << "wall_ms: " << wall_ms << "\n";
  out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  for (const auto& f : failures) {
    out << "FAIL check=" << f.check << " trial=" << f.trial;
    for (const auto& [k, v] : f.inputs) out << " " << k << "=\"" << v << "\"";
    if (!f.detail.empty()) out << " detail=\"" << f.detail << "\"";
    out << "\n";
  }
  return out.str();
}

nlohmann::ordered_json SuiteReport::to_json(bool with_timing) const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["spec"] = spec_summary;
  j["seed"] = seed;
  j["trials"] = trials;
  j["passes"] = passes;
  j["failure_count"] = failures.size();
  if (with_timing) j["wall_ms"] = wall_ms;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : failures) {
    nlohmann::ordered_json fj;
    fj["check"] = f.check;
    fj["trial"] = f.trial;
    fj["inputs"] = f.inputs;
    fj["detail"] = f.detail;
    j["failures"].push_back(std::move(fj));
  }
  return j;
}

SuiteReport suite_jacobi(const SpecPtr& spec, WindowConfig window, std::uint64_t trials, std::uint64_t seed,
                         const BracketFn& br) {
  const auto start = Clock::now();
  SuiteReport report{"jacobi", spec->summary(), seed};
  const auto basis = enumerate_window(*spec, window.K, window.L);
  for (std::uint64_t t = 0; t < trials; ++t) {
    TrialRng rng(seed, kJacobi, t);
    Element u = random_element(spec, basis, rng);
    Element v = random_element(spec, basis, rng);
    Element w = random_element(spec, basis, rng);
    Element sum = br(br(u, v), w) + br(br(v, w), u) + br(br(w, u), v);
    report.check(sum.is_zero(), [&] {
      return FailureRecord{"jacobi", t, {{"u", to_literal(u)}, {"v", to_literal(v)}, {"w", to_literal(w)}},
                           "cyclic sum = " + to_literal(sum)};
    });
  }
  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

SuiteReport suite_bracket_consistency(const SpecPtr& spec, WindowConfig window, ConsistencyConfig cfg,
                                      std::uint64_t seed, const BracketFn& br) {
  const auto start = Clock::now();
  SuiteReport report{"bracket", spec->summary(), seed};
  const auto basis = enumerate_window(*spec, window.K, window.L);
  const bool flat = sgn(spec->gamma.proj_generator(1)) == 0;

  for (std::uint64_t t = 0; t < cfg.pairs; ++t) {
    TrialRng rng(seed, kPairs, t);
    Element u = random_element(spec, basis, rng);
    Element v = random_element(spec, basis, rng);
    const Element uv = br(u, v);
    auto inputs = [&] { return std::map<std::string, std::string>{{"u", to_literal(u)}, {"v", to_literal(v)}}; };

    Element via_odot = reduce(odot(u, v) - odot(v, u));
    report.check(uv == via_odot, [&] {
      return FailureRecord{"odot_antisymmetrization", t, inputs(),
                           to_literal(uv) + " != " + to_literal(via_odot)};
    });
    Element vu = br(v, u);
    report.check(uv == -vu, [&] { return FailureRecord{"antisymmetry", t, inputs(), to_literal(uv + vu)}; });
    Element uu = br(u, u);
    report.check(uu.is_zero(), [&] { return FailureRecord{"self_bracket", t, inputs(), to_literal(uu)}; });

    const BasisIdx& a = basis[rng.below(basis.size())];
    const BasisIdx& b = basis[rng.below(basis.size())];
    Element direct = odot(monomial(spec, a), monomial(spec, b));
    Element closed = odot_closed_form(spec, a, b);
    report.check(direct == closed, [&] {
      return FailureRecord{"odot_closed_form", t, {{"a", a.to_string()}, {"b", b.to_string()}},
                           to_literal(direct) + " != " + to_literal(closed)};
    });
  }

  const auto flat_basis = with_zero_first_coordinate(basis);
  const Element one = monomial(spec, Vec2{Rat(0), Rat(0)}, 0, 0);
  for (std::uint64_t t = 0; t < cfg.oracle_samples; ++t) {
    TrialRng rng(seed, kOracles, t);

    // [1, x^{β,j}] = β₁x^{β,j} + j₁x^{β,j−1_[1]}
    const BasisIdx& x = basis[rng.below(basis.size())];
    Element expect_unit(spec);
    expect_unit.emit(x, x.alpha.c1);
    expect_unit.emit(x.alpha, x.idx.i1 - 1, x.idx.i2, Rat(x.idx.i1));
    expect_unit = reduce(expect_unit);
    Element got_unit = br(one, monomial(spec, x));
    report.check(got_unit == expect_unit, [&] {
      return FailureRecord{"identity_element", t, {{"x", x.to_string()}},
                           to_literal(got_unit) + " != " + to_literal(expect_unit)};
    });

    // Leading-order oracle: coefficient on the top filtration index and
    // nothing above it.
    const BasisIdx& p = basis[rng.below(basis.size())];
    const BasisIdx& q = basis[rng.below(basis.size())];
    Element got = br(monomial(spec, p), monomial(spec, q));
    const Vec2 deg = p.alpha + q.alpha;
    MultiIndex top{p.idx.i1 + q.idx.i1, p.idx.i2 + q.idx.i2};
    Rat expect_coeff;
    if (!flat) {
      expect_coeff = p.alpha.c1 * (q.alpha.c2 - 1) - q.alpha.c1 * (p.alpha.c2 - 1);
    } else {
      expect_coeff = Rat(p.idx.i1) * (q.alpha.c2 - 1) - Rat(q.idx.i1) * (p.alpha.c2 - 1);
      top.i1 -= 1;
    }
    bool ok = true;
    if (top.i1 >= 0) {
      BasisIdx lead{deg, top};
      if (spec->excluded(lead)) expect_coeff = 0;
      ok = got.coeff(lead) == expect_coeff;
    }
    for (const auto& [bi, c] : got.terms())
      if (!(bi.alpha == deg) || (top.i1 >= 0 && !(bi.idx == top) && index_cmp(bi.idx, top) > 0) ||
          (top.i1 < 0))
        ok = false;
    report.check(ok, [&] {
      return FailureRecord{flat ? "leading_order_pi1_zero" : "leading_order", t,
                           {{"a", p.to_string()}, {"b", q.to_string()}}, to_literal(got)};
    });

    // Same-degree special case, valid for β₁ = 0:
    // [x^{β,j}, x^{β,k}] = (β₂−1)(j₁−k₁)x^{2β,j+k−1_[1]} + (j₁k₂−k₁j₂)x^{2β,j+k−𝟙}
    if (!flat_basis.empty()) {
      const BasisIdx& bj = flat_basis[rng.below(flat_basis.size())];
      std::vector<const BasisIdx*> same;
      for (const auto& c : flat_basis)
        if (c.alpha == bj.alpha) same.push_back(&c);
      const BasisIdx& bk = *same[rng.below(same.size())];
      const Vec2 two_beta = bj.alpha + bj.alpha;
      const long j1 = bj.idx.i1, j2 = bj.idx.i2, k1 = bk.idx.i1, k2 = bk.idx.i2;
      Element expect(spec);
      expect.emit(two_beta, j1 + k1 - 1, j2 + k2, (bj.alpha.c2 - 1) * Rat(j1 - k1));
      expect.emit(two_beta, j1 + k1 - 1, j2 + k2 - 1, Rat(j1 * k2 - k1 * j2));
      expect = reduce(expect);
      Element same_got = br(monomial(spec, bj), monomial(spec, bk));
      report.check(same_got == expect, [&] {
        return FailureRecord{"same_degree_special_case", t, {{"a", bj.to_string()}, {"b", bk.to_string()}},
                             to_literal(same_got) + " != " + to_literal(expect)};
      });
    }
  }

  // x^{σ₁,0} is central in 𝒜₂ (only meaningful when σ₁ ∈ Γ).
  if (spec->has_sigma1) {
    const Element central = monomial(spec, sigma1(), 0, 0);
    for (std::size_t t = 0; t < basis.size(); ++t) {
      Element r = bracket_raw(central, monomial(spec, basis[t]));
      report.check(r.is_zero(), [&] {
        return FailureRecord{"sigma1_central", t, {{"x", basis[t].to_string()}}, to_literal(r)};
      });
    }
  }

  if (spec->simple_part) {
    const BasisIdx s2{sigma2(), {}};
    for (std::uint64_t t = 0; t < cfg.closure_pairs; ++t) {
      TrialRng rng(seed, kSimpleClosure, t);
      Element u = random_element(spec, basis, rng);
      Element v = random_element(spec, basis, rng);
      Rat c = bracket_raw(u, v).coeff(s2);
      report.check(sgn(c) == 0, [&] {
        return FailureRecord{"simple_part_sigma2", t, {{"u", to_literal(u)}, {"v", to_literal(v)}},
                             "raw sigma2 coefficient " + to_string(c)};
      });
    }
  }

  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

namespace {

struct NamedDerivation {
  std::string name;
  Derivation d;
  std::optional<Vec2> degree;
  std::optional<BasisIdx> extension_index;
};

}  // namespace

SuiteReport suite_derivations(const SpecPtr& spec, WindowConfig window, std::uint64_t pairs, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"derivations", spec->summary(), seed};
  const auto basis = enumerate_window(*spec, window.K, window.L);
  const Vec2 zero{Rat(0), Rat(0)};

  std::vector<NamedDerivation> family;
  {
    TrialRng rng(seed, kDerivationChoice, 0);
    const BasisIdx& x = basis[rng.below(basis.size())];
    family.push_back({"ad(" + x.to_string() + ")", ad(monomial(spec, x)), x.alpha, std::nullopt});
    Element u = random_element(spec, basis, rng);
    family.push_back({"ad(" + to_literal(u) + ")", ad(u), std::nullopt, std::nullopt});
    GroupHom mu;
    for (int k = 0; k < spec->gamma.rank(); ++k) mu.values.push_back(random_nonzero_rat(rng));
    family.push_back({"dmu(random)", make_dmu(spec, mu), zero, std::nullopt});
    family.push_back({"dmu(pi1)", make_dmu(spec, projection_hom(spec->gamma, 1)), zero, std::nullopt});
  }
  if (!d1_undefined_reason(*spec))
    family.push_back({"d1", make_d1(spec), sigma1(), BasisIdx{sigma1(), {0, 1}}});
  if (!d1bar_undefined_reason(*spec))
    family.push_back({"d1bar", make_d1bar(spec), sigma1(), BasisIdx{sigma1(), {1, 0}}});
  if (!d2_undefined_reason(*spec))
    family.push_back({"d2", make_d2(spec), sigma2(), BasisIdx{sigma2(), {0, 0}}});
  if (!dt1_undefined_reason(*spec)) family.push_back({"dt1", make_dt1(spec), zero, std::nullopt});
  if (!dt2_undefined_reason(*spec)) family.push_back({"dt2", make_dt2(spec), zero, std::nullopt});

  for (std::size_t f = 0; f < family.size(); ++f) {
    const auto& nd = family[f];
    const LinearOp op = as_operator(nd.d);
    for (std::uint64_t t = 0; t < pairs; ++t) {
      TrialRng rng(seed, kDerivationLaw + static_cast<std::uint32_t>(16 * (f + 1)), t);
      Element u = random_element(spec, basis, rng);
      Element v = random_element(spec, basis, rng);
      LawReport law = check_derivation_law(op, {{u, v}});
      report.check(law.ok(), [&] {
        return FailureRecord{"law:" + nd.name, t, {{"u", to_literal(u)}, {"v", to_literal(v)}},
                             to_literal(law.failures[0].lhs) + " != " + to_literal(law.failures[0].rhs)};
      });
    }
    if (nd.degree) {
      report.check(is_homogeneous(op, spec, *nd.degree, basis), [&] {
        return FailureRecord{"homogeneous:" + nd.name, 0, {{"degree", to_string(*nd.degree)}}, ""};
      });
    }
    if (nd.extension_index) {
      for (std::size_t t = 0; t < basis.size(); ++t) {
        Element x = monomial(spec, basis[t]);
        Element direct = op(x);
        Element via_ext = extension_ad_apply(*nd.extension_index, x);
        report.check(direct == via_ext, [&] {
          return FailureRecord{"extension_ad:" + nd.name, t, {{"x", basis[t].to_string()}},
                               to_literal(direct) + " != " + to_literal(via_ext)};
        });
      }
    }
  }

  if (!dt1_undefined_reason(*spec)) {
    const Derivation dt1 = make_dt1(spec);
    const Derivation combo =
        ad(monomial(spec, zero, 0, 0)) - make_dmu(spec, projection_hom(spec->gamma, 1));
    for (std::size_t t = 0; t < basis.size(); ++t) {
      Element x = monomial(spec, basis[t]);
      Element lhs = apply(dt1, x);
      Element rhs = apply(combo, x);
      report.check(lhs == rhs, [&] {
        return FailureRecord{"dt1_equals_ad1_minus_dpi1", t, {{"x", basis[t].to_string()}},
                             to_literal(lhs) + " != " + to_literal(rhs)};
      });
    }
  }

  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace blockalg
