#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "blockalg/core.hpp"
#include "blockalg/derivations.hpp"
#include "blockalg/isomorphism.hpp"

namespace blockalg {

/// Deterministic generator for one trial of one sub-check. Every trial owns its
/// stream, so any failure can be replayed from (seed, stream, trial) alone.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint32_t stream, std::uint64_t trial);

  /// Uniform in [0, n). Uses rejection sampling so results are identical on
  /// every standard library.
  std::uint64_t below(std::uint64_t n);
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

/// 1–4 terms, coefficients from {±1, ±2, ±1/2, ±3/2}, indices uniform over the window.
Element random_element(const SpecPtr& spec, const std::vector<BasisIdx>& window, TrialRng& rng);
/// Nonzero rational with small numerator and denominator.
Rat random_nonzero_rat(TrialRng& rng);
/// Random rank 0–2 lattice with small rational generators.
Lattice random_lattice(TrialRng& rng, int min_rank = 1);
/// Random J valid for gamma (J_1 = N whenever pi_1(gamma) = 0) that is not Witt-degenerate, if one exists.
std::optional<JSpec> random_valid_j(const Lattice& gamma, TrialRng& rng);

struct FailureRecord {
  std::string check;
  std::uint64_t trial = 0;
  /// Literal inputs sufficient to replay the failing check in isolation.
  std::map<std::string, std::string> inputs;
  std::string detail;
};

struct SuiteReport {
  SuiteReport() = default;
  SuiteReport(std::string suite_, std::string spec_summary_, std::uint64_t seed_)
      : suite(std::move(suite_)), spec_summary(std::move(spec_summary_)), seed(seed_) {}

  std::string suite;
  std::string spec_summary;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  std::vector<FailureRecord> failures;
  double wall_ms = 0.0;

  bool ok() const { return failures.empty() && passes == trials; }
  /// Tallies one check; make_failure() is only invoked when the check failed.
  template <typename MakeFailure>
  void check(bool passed, MakeFailure&& make_failure) {
    ++trials;
    if (passed) ++passes;
    else failures.push_back(make_failure());
  }
  /// Sorts failures by (check, trial) so merged reports are order-independent.
  void finalize();
  void merge(const SuiteReport& other);

  std::string to_text(bool with_timing = true) const;
  nlohmann::ordered_json to_json(bool with_timing = true) const;
};

using BracketFn = std::function<Element(const Element&, const Element&)>;

struct WindowConfig {
  int K = 2;
  int L = 3;
};

/// Exact Jacobi identity on random triples from the window.
SuiteReport suite_jacobi(const SpecPtr& spec, WindowConfig window, std::uint64_t trials, std::uint64_t seed,
                         const BracketFn& br = bracket);

struct ConsistencyConfig {
  std::uint64_t pairs = 1000;
  std::uint64_t oracle_samples = 300;
  std::uint64_t closure_pairs = 300;
};

/// Bracket vs. ⊙-antisymmetrization, ⊙ closed form, antisymmetry, [1,x]
/// formula, leading-order and (β₁ = 0) special-case oracles, σ₁ centrality
/// over the window, and zero σ₂-coefficient in the simple part.
SuiteReport suite_bracket_consistency(const SpecPtr& spec, WindowConfig window, ConsistencyConfig cfg,
                                      std::uint64_t seed, const BracketFn& br = bracket);

/// Derivation law for every constructor defined in the algebra, homogeneity,
/// agreement of d₁/d̄₁/d₂ with extension-algebra ad, and ∂_{t₁} = ad(1) − d_{π₁}.
SuiteReport suite_derivations(const SpecPtr& spec, WindowConfig window, std::uint64_t pairs, std::uint64_t seed);

struct IsoConfig {
  std::uint64_t maps = 20;
  std::uint64_t pairs = 300;
  WindowConfig window{2, 2};
};

/// Random valid (a,b): ψ homomorphism and triangularity, grading, decide_iso
/// round trip, moduli keys; plus h and J mutations that must be rejected.
SuiteReport suite_iso(const SpecPtr& spec, IsoConfig cfg, std::uint64_t seed);

/// Orbit invariance of canonical forms and agreement of moduli keys with
/// decide_iso over random lattices and spec pairs.
SuiteReport suite_moduli(std::uint64_t lattices, std::uint64_t moves, std::uint64_t spec_pairs, std::uint64_t seed);

/// Random (spec, valid map) round trips through decide_iso, plus J-mismatch,
/// h-mismatch and π₁ = 0 rigidity instances.
SuiteReport suite_decide(std::uint64_t instances, std::uint64_t seed);

/// Nilpotence of ∂_{t₁}, ∂_{t₂}, growth witnesses for ad(x^{β,i}) with β₁ ≠ 0
/// (leading coefficient k!·β₁^k), closure for d_μ and ad(1).
SuiteReport suite_locality(const SpecPtr& spec, WindowConfig window, int cap, std::uint64_t seed);

struct SimplicityResult {
  bool reached_full_window = false;
  std::vector<BasisIdx> missed;
  int rounds = 0;
  std::size_t span_dim = 0;
};

/// Closes span{seed} under bracketing with every window basis element for up
/// to `depth` rounds and reports whether the whole window lies in the span.
/// One-sided: an unreached window never disproves simplicity.
/// Throws Error(ZeroSeed).
SimplicityResult simplicity_probe(const Element& seed_element, WindowConfig window, int depth);

/// simplicity_probe from `seeds` random nonzero window elements.
SuiteReport suite_simplicity(const SpecPtr& spec, WindowConfig window, int depth, std::uint64_t seeds,
                             std::uint64_t seed);

}  // namespace blockalg
