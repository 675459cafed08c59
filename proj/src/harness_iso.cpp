#include <chrono>

#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "blockalg/literal.hpp"

namespace blockalg {

namespace {

enum Stream : std::uint32_t {
  kIsoMap = 20,
  kIsoPairs = 21,
  kIsoCompose = 22,
  kModuliLattice = 30,
  kModuliMove = 31,
  kModuliPair = 32,
  kDecide = 40,
  kDecideRigid = 41,
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// n/d with n in [lo, hi], d in [1, dmax]; draws are sequenced.
Rat small_ratio(TrialRng& rng, long lo, long hi, long dmax) {
  const long n = rng.between(lo, hi);
  const long d = rng.between(1, dmax);
  Rat r(n, d);
  r.canonicalize();
  return r;
}

IsoParams random_params(const JSpec& j, TrialRng& rng) {
  IsoParams p;
  p.a = random_nonzero_rat(rng);
  p.b = b_must_vanish(j) ? Rat(0) : random_nonzero_rat(rng);
  return p;
}

std::string params_text(const IsoParams& p) { return "a=" + to_string(p.a) + " b=" + to_string(p.b); }

/// Γ with its h replaced by h+1, or nullopt when Γ ∩ ker π₁ = 0.
std::optional<Lattice> bump_h(const Lattice& gamma) {
  const auto e = gamma.echelon();
  if (sgn(e.h) == 0) return std::nullopt;
  std::vector<Vec2> gens;
  if (sgn(e.c) != 0) gens.push_back(gamma.basis()[0]);
  gens.push_back({Rat(0), e.h + 1});
  return Lattice(std::move(gens));
}

/// Flips one factor of J, returning the spec only when it is valid and classified.
std::optional<SpecPtr> flip_j(const AlgebraSpec& spec, int p) {
  JSpec j = spec.j;
  JType& slot = p == 1 ? j.j1 : j.j2;
  slot = slot == JType::Nat ? JType::Zero : JType::Nat;
  try {
    SpecPtr out = spec_validate(spec.gamma, j);
    if (out->witt_degenerate) return std::nullopt;
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::pair<SpecPtr, SpecPtr> random_related(TrialRng& rng, IsoParams& params) {
  for (;;) {
    Lattice gamma = random_lattice(rng);
    auto j = random_valid_j(gamma, rng);
    if (!j) continue;
    SpecPtr a = spec_validate(gamma, *j);
    params = random_params(*j, rng);
    SpecPtr b = spec_validate(map_lattice(params, gamma), *j);
    // A shear can flatten π₂ onto the Witt-degenerate locus; skip those.
    if (b->witt_degenerate) continue;
    return {a, b};
  }
}

}  // namespace

SuiteReport suite_iso(const SpecPtr& spec, IsoConfig cfg, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"iso", spec->summary(), seed};
  if (spec->witt_degenerate) {
    report.finalize();
    return report;
  }
  const auto basis = enumerate_window(*spec, cfg.window.K, cfg.window.L);

  for (std::uint64_t m = 0; m < cfg.maps; ++m) {
    TrialRng rng(seed, kIsoMap, m);
    IsoParams p;
    SpecPtr target;
    do {
      p = random_params(spec->j, rng);
      target = spec_validate(map_lattice(p, spec->gamma), spec->j);
    } while (target->witt_degenerate);
    auto with = [&](std::map<std::string, std::string> in) {
      in["params"] = params_text(p);
      return in;
    };
    auto psi = [&](const Element& u) { return psi_apply(p, target, u); };

    std::vector<std::pair<Element, Element>> pairs;
    for (std::uint64_t t = 0; t < cfg.pairs; ++t) {
      TrialRng pr(seed, kIsoPairs, m * cfg.pairs + t);
      Element u = random_element(spec, basis, pr);
      Element v = random_element(spec, basis, pr);
      pairs.emplace_back(std::move(u), std::move(v));
    }
    const PsiReport pr = psi_check(p, spec, target, pairs, cfg.window.K, cfg.window.L);
    report.trials += pr.checked;
    report.passes += pr.checked - pr.failures.size();
    for (const auto& f : pr.failures)
      report.failures.push_back({"psi_homomorphism", m, with({{"u", to_literal(f.u)}, {"v", to_literal(f.v)}}),
                                 to_literal(f.lhs) + " != " + to_literal(f.rhs)});
    report.check(pr.triangularity_failures.empty(), [&] {
      return FailureRecord{"psi_triangular", m, with({{"x", pr.triangularity_failures[0].to_string()}}), ""};
    });

    for (std::size_t t = 0; t < pairs.size() && t < 50; ++t) {
      const Element& u = pairs[t].first;
      for (const auto& [b, c] : u.terms()) {
        Element lhs = grade_component(psi(u), p(b.alpha));
        Element rhs = psi(grade_component(u, b.alpha));
        report.check(lhs == rhs, [&] {
          return FailureRecord{"psi_grading", m, with({{"u", to_literal(u)}, {"alpha", to_string(b.alpha)}}),
                               to_literal(lhs) + " != " + to_literal(rhs)};
        });
      }
    }

    const IsoVerdict verdict = decide_iso(*spec, *target);
    report.check(verdict.found && phi_check(verdict.params, *spec, *target), [&] {
      return FailureRecord{"decide_round_trip", m, with({{"target", target->summary()}}), verdict.to_json()};
    });
    report.check(moduli_key(*spec) == moduli_key(*target), [&] {
      return FailureRecord{"moduli_key_invariant", m, with({{"target", target->summary()}}),
                           moduli_key(*spec).to_string() + " != " + moduli_key(*target).to_string()};
    });

    TrialRng cr(seed, kIsoCompose, m);
    IsoParams q;
    SpecPtr third;
    do {
      q = random_params(spec->j, cr);
      third = spec_validate(map_lattice(q, target->gamma), spec->j);
    } while (third->witt_degenerate);
    const IsoParams qp = q.after(p);
    for (const auto& b : basis) {
      Element x = monomial(spec, b);
      Element stepwise = psi_apply(q, third, psi(x));
      Element direct = psi_apply(qp, third, x);
      report.check(stepwise == direct, [&] {
        return FailureRecord{"psi_composition", m, with({{"x", b.to_string()}, {"second", params_text(q)}}),
                             to_literal(stepwise) + " != " + to_literal(direct)};
      });
    }

    if (auto bumped = bump_h(target->gamma)) {
      SpecPtr mutant = spec_validate(*bumped, spec->j);
      IsoVerdict v = decide_iso(*spec, *mutant);
      report.check(!v.found, [&] {
        return FailureRecord{"h_mutation_rejected", m, with({{"mutant", mutant->summary()}}), v.to_json()};
      });
    }
    for (int pj : {1, 2}) {
      auto mutant = flip_j(*target, pj);
      if (!mutant) continue;
      IsoVerdict v = decide_iso(*spec, **mutant);
      report.check(!v.found && v.reason == NotIsoReason::JMismatch, [&] {
        return FailureRecord{"j_mutation_rejected", m, with({{"mutant", (*mutant)->summary()}}), v.to_json()};
      });
    }
  }
  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

SuiteReport suite_moduli(std::uint64_t lattices, std::uint64_t moves, std::uint64_t spec_pairs, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"moduli", "random lattices", seed};
  for (std::uint64_t l = 0; l < lattices; ++l) {
    TrialRng rng(seed, kModuliLattice, l);
    const Lattice gamma = random_lattice(rng, 0);
    for (ShearGroup group : {ShearGroup::G1, ShearGroup::G2}) {
      const CanonicalDescriptor base = canonical_form(gamma, group);
      for (std::uint64_t k = 0; k < moves; ++k) {
        TrialRng mr(seed, kModuliMove, (l * moves + k) * 2 + (group == ShearGroup::G2));
        const Rat a = random_nonzero_rat(mr);
        const Rat b = group == ShearGroup::G1 ? small_ratio(mr, -3, 3, 3) : Rat(0);
        ShearScale g(a, b, group);
        std::vector<Vec2> moved;
        for (const auto& v : gamma.basis()) moved.push_back(apply_group_element(g, v));
        const CanonicalDescriptor after = canonical_form(Lattice(std::move(moved)), group);
        report.check(after == base, [&] {
          return FailureRecord{"canonical_orbit_invariance", l,
                               {{"lattice", gamma.to_string()},
                                {"group", group == ShearGroup::G1 ? "G1" : "G2"},
                                {"move", "a=" + to_string(a) + " b=" + to_string(b)}},
                               base.to_string() + " != " + after.to_string()};
        });
      }
    }
  }

  for (std::uint64_t t = 0; t < spec_pairs; ++t) {
    TrialRng rng(seed, kModuliPair, t);
    IsoParams p;
    auto [a, b] = random_related(rng, p);
    const int mode = static_cast<int>(rng.below(3));
    if (mode == 1) {
      // Unrelated lattice, same J when that is valid.
      for (;;) {
        Lattice other = random_lattice(rng);
        SpecPtr cand;
        try {
          cand = spec_validate(other, a->j);
        } catch (const Error&) {
          continue;
        }
        if (cand->witt_degenerate) continue;
        b = cand;
        break;
      }
    } else if (mode == 2) {
      if (auto bumped = bump_h(b->gamma)) b = spec_validate(*bumped, b->j);
      else if (auto flipped = flip_j(*b, 2)) b = *flipped;
    }
    const bool same_key = moduli_key(*a) == moduli_key(*b);
    const IsoVerdict v = decide_iso(*a, *b);
    report.check(same_key == v.found, [&] {
      return FailureRecord{"moduli_key_matches_decide", t, {{"a", a->summary()}, {"b", b->summary()}},
                           moduli_key(*a).to_string() + " vs " + moduli_key(*b).to_string() + " decide " +
                               v.to_json()};
    });
  }
  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

SuiteReport suite_decide(std::uint64_t instances, std::uint64_t seed) {
  const auto start = Clock::now();
  SuiteReport report{"decide", "random specs", seed};
  for (std::uint64_t t = 0; t < instances; ++t) {
    TrialRng rng(seed, kDecide, t);
    IsoParams p;
    auto [a, b] = random_related(rng, p);
    auto in = [&] {
      return std::map<std::string, std::string>{{"a", a->summary()}, {"b", b->summary()}, {"params", params_text(p)}};
    };
    const IsoVerdict v = decide_iso(*a, *b);
    report.check(v.found && phi_check(v.params, *a, *b),
                 [&] { return FailureRecord{"round_trip", t, in(), v.to_json()}; });

    for (int pj : {1, 2}) {
      auto mutant = flip_j(*b, pj);
      if (!mutant) continue;
      const IsoVerdict mv = decide_iso(*a, **mutant);
      report.check(!mv.found && mv.reason == NotIsoReason::JMismatch, [&] {
        return FailureRecord{"j_mismatch", t, {{"a", a->summary()}, {"b", (*mutant)->summary()}}, mv.to_json()};
      });
    }
    if (auto bumped = bump_h(b->gamma)) {
      SpecPtr mutant = spec_validate(*bumped, b->j);
      const IsoVerdict mv = decide_iso(*a, *mutant);
      const bool flat = sgn(a->gamma.proj_generator(1)) == 0;
      const NotIsoReason want = flat ? NotIsoReason::Pi1ZeroRigidity : NotIsoReason::LatticeInvariantMismatch;
      report.check(!mv.found && mv.reason == want, [&] {
        return FailureRecord{"h_mismatch", t, {{"a", a->summary()}, {"b", mutant->summary()}}, mv.to_json()};
      });
    }
  }

  // π₁ = 0 on at least one side with unequal lattices.
  for (std::uint64_t t = 0; t < instances; ++t) {
    TrialRng rng(seed, kDecideRigid, t);
    const JSpec j{JType::Nat, rng.below(2) ? JType::Nat : JType::Zero};
    Rat h1 = small_ratio(rng, 1, 6, 3);
    Rat h2;
    do {
      h2 = small_ratio(rng, 1, 6, 3);
    } while (h2 == h1);
    SpecPtr a = spec_validate(Lattice({{Rat(0), h1}}), j);
    SpecPtr b;
    if (rng.below(2)) {
      b = spec_validate(Lattice({{Rat(0), h2}}), j);
    } else {
      const Rat c = random_nonzero_rat(rng);
      const Rat s(rng.between(-3, 3));
      b = spec_validate(Lattice({{c, s}, {Rat(0), h1}}), j);
    }
    const IsoVerdict v = decide_iso(*a, *b);
    report.check(!v.found && v.reason == NotIsoReason::Pi1ZeroRigidity, [&] {
      return FailureRecord{"pi1_zero_rigidity", t, {{"a", a->summary()}, {"b", b->summary()}}, v.to_json()};
    });
  }
  report.finalize();
  report.wall_ms = elapsed_ms(start);
  return report;
}

}  // namespace blockalg
