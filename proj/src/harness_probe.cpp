#include <algorithm>
#include <chrono>
#include <queue>
#include <tuple>

#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "blockalg/literal.hpp"
#include "blockalg/span.hpp"

namespace blockalg {

namespace {

enum Stream : std::uint32_t {
  kLocalityMu = 50,
  kSimplicitySeed = 60,
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Number of applications of ∂_{t_p} that kill x^{α,i}: one more than i_p,
// except when the chain passes through the removed x^{σ₁,0}.
int expected_nilpotence(const AlgebraSpec& spec, const BasisIdx& b, int p) {
  const long ip = b.idx[p];
  const long other = b.idx[3 - p];
  if (ip > 0 && other == 0 && spec.excluded(BasisIdx{b.alpha, {0, 0}})) return static_cast<int>(ip);
  return static_cast<int>(ip + 1);
}

// Smallest r with b in the (r, r) window box.
long box_radius(const Lattice& gamma, const BasisIdx& b) {
  long r = b.idx.level();
  const auto coords = gamma.coordinates(b.alpha);
  for (const auto& k : *coords) r = std::max(r, Int(abs(k)).get_si());
  return r;
}

}  // namespace

SuiteReport suite_locality(const SpecPtr& spec, WindowConfig window, int cap, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"locality", spec->summary(), seed};
  const auto basis = enumerate_window(*spec, window.K, window.L);
  const int nil_cap = std::max(cap, window.L + 2);

  for (int p : {1, 2}) {
    const bool defined = p == 1 ? !dt1_undefined_reason(*spec) : !dt2_undefined_reason(*spec);
    if (!defined) continue;
    const LinearOp dt = as_operator(p == 1 ? make_dt1(spec) : make_dt2(spec));
    const std::string name = p == 1 ? "dt1" : "dt2";
    for (std::size_t t = 0; t < basis.size(); ++t) {
      const BasisIdx& b = basis[t];
      Element w = monomial(spec, b);
      for (long k = 0; k <= b.idx[p]; ++k) w = dt(w);
      report.check(w.is_zero(), [&] {
        return FailureRecord{name + "_power_kills", t, {{"x", b.to_string()}}, to_literal(w)};
      });
      const auto degree = nilpotence_degree(dt, monomial(spec, b), nil_cap);
      const int want = expected_nilpotence(*spec, b, p);
      report.check(degree && *degree == want, [&] {
        return FailureRecord{name + "_nilpotence_degree", t, {{"x", b.to_string()}},
                             "got " + (degree ? std::to_string(*degree) : std::string("none")) + " want " +
                                 std::to_string(want)};
      });
    }
  }

  const int growth_steps = std::max(cap, 5);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const BasisIdx& b = basis[t];
    if (sgn(b.alpha.c1) == 0) continue;
    const Vec2 twice = b.alpha + b.alpha;
    const FinitenessVerdict verdict =
        local_finiteness_probe(as_operator(ad(monomial(spec, b))), monomial(spec, twice, 0, 0), growth_steps);
    bool ok = verdict.kind == FinitenessVerdict::Kind::GrowthWitness &&
              verdict.trace.size() == static_cast<std::size_t>(growth_steps) + 1;
    std::string detail;
    for (int k = 0; ok && k <= growth_steps; ++k) {
      const GrowthStep& step = verdict.trace[k];
      const BasisIdx lead{Rat(k + 2) * b.alpha, {k * b.idx.i1, k * b.idx.i2}};
      const Rat coeff = factorial(static_cast<unsigned>(k)) * pow(b.alpha.c1, k);
      if (!(step.lead == lead) || step.coeff != coeff) {
        ok = false;
        detail = "step " + std::to_string(k) + ": " + to_string(step.coeff) + " " + step.lead.to_string() +
                 ", want " + to_string(coeff) + " " + lead.to_string();
      }
    }
    report.check(ok, [&] {
      return FailureRecord{"ad_growth_witness", t, {{"x", b.to_string()}},
                           detail.empty() ? "no growth witness" : detail};
    });
  }

  {
    TrialRng rng(seed, kLocalityMu, 0);
    GroupHom mu;
    for (int k = 0; k < spec->gamma.rank(); ++k) mu.values.push_back(random_nonzero_rat(rng));
    const LinearOp dmu = as_operator(make_dmu(spec, mu));
    const LinearOp ad_one = as_operator(ad(monomial(spec, Vec2{Rat(0), Rat(0)}, 0, 0)));
    for (std::size_t t = 0; t < basis.size(); ++t) {
      const BasisIdx& b = basis[t];
      const Element x = monomial(spec, b);
      const FinitenessVerdict vm = local_finiteness_probe(dmu, x, cap);
      report.check(vm.kind == FinitenessVerdict::Kind::ClosureDim && vm.dim == 1, [&] {
        return FailureRecord{"dmu_closure_dim_1", t, {{"x", b.to_string()}}, "dim " + std::to_string(vm.dim)};
      });
      const FinitenessVerdict va = local_finiteness_probe(ad_one, x, nil_cap);
      report.check(va.kind == FinitenessVerdict::Kind::ClosureDim && va.dim <= b.idx.i1 + 1, [&] {
        return FailureRecord{"ad1_closure", t, {{"x", b.to_string()}}, "dim " + std::to_string(va.dim)};
      });
    }
  }

  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

SimplicityResult simplicity_probe(const Element& seed_element, WindowConfig window, int depth) {
  if (seed_element.is_zero()) throw Error(ErrorCode::ZeroSeed, "simplicity probe needs a nonzero seed");
  const SpecPtr& spec = seed_element.spec();
  const auto basis = enumerate_window(*spec, window.K, window.L);
  std::vector<Element> gens;
  for (const auto& b : basis) gens.push_back(monomial(spec, b));

  SimplicityResult result;
  SparseEchelon span;
  // Window elements not yet in the span; only ever shrinks.
  std::vector<std::size_t> missing(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) missing[k] = gens.size() - 1 - k;
  // Stops at the first window element still outside the span.
  auto prune = [&] {
    while (!missing.empty() && span.contains(gens[missing.back()].terms())) missing.pop_back();
  };

  // Best-first closure: expand the sparsest pending element next. Every queued
  // element is a residual modulo the span, hence still in the ideal.
  struct Pending {
    long reach;
    std::size_t size;
    int level;
    std::uint64_t order;
    Element e;
  };
  auto later = [](const Pending& x, const Pending& y) {
    return std::tie(x.reach, x.size, x.level, x.order) > std::tie(y.reach, y.size, y.level, y.order);
  };
  std::priority_queue<Pending, std::vector<Pending>, decltype(later)> queue(later);
  std::uint64_t order = 0;
  auto push = [&](const Terms& residual, int level) {
    Element e(spec);
    long reach = 0;
    for (const auto& [b, c] : residual) {
      e.emit(b, c);
      reach = std::max(reach, box_radius(spec->gamma, b));
    }
    queue.push({reach, e.size(), level, order++, std::move(e)});
  };
  push(span.insert_reduced(seed_element.terms()), 0);
  prune();
  while (!missing.empty() && !queue.empty()) {
    Pending top = queue.top();
    queue.pop();
    if (top.level >= depth) continue;
    result.rounds = std::max(result.rounds, top.level + 1);
    for (const auto& g : gens) {
      Terms r = span.insert_reduced(bracket(top.e, g).terms());
      if (!r.empty()) push(r, top.level + 1);
    }
    prune();
  }
  for (std::size_t k : missing) result.missed.push_back(basis[k]);
  result.reached_full_window = result.missed.empty();
  result.span_dim = span.dim();
  return result;
}

SuiteReport suite_simplicity(const SpecPtr& spec, WindowConfig window, int depth, std::uint64_t seeds,
                             std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"simplicity", spec->summary(), seed};
  const auto basis = enumerate_window(*spec, window.K, window.L);
  for (std::uint64_t t = 0; t < seeds; ++t) {
    TrialRng rng(seed, kSimplicitySeed, t);
    Element s(spec);
    while (s.is_zero()) s = random_element(spec, basis, rng);
    const SimplicityResult r = simplicity_probe(s, window, depth);
    report.check(r.reached_full_window, [&] {
      std::string missed;
      for (const auto& b : r.missed) missed += (missed.empty() ? "" : " ") + b.to_string();
      return FailureRecord{"reaches_full_window", t, {{"seed", to_literal(s)}},
                           "rounds " + std::to_string(r.rounds) + ", missed " + missed};
    });
  }
  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace blockalg
