#include <doctest.h>

#include <algorithm>

#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "support.hpp"

using namespace blockalg;
using namespace testsupport;

namespace {
Element corrupted(const Element& u, const Element& v) {
  Element b = bracket(u, v);
  if (b.is_zero()) return b;
  Element out(b.spec());
  bool first = true;
  for (const auto& [t, c] : b.terms()) {
    out.emit(t, first ? c + 1 : c);
    first = false;
  }
  return out;
}
}  // namespace

TEST_SUITE("harness") {

TEST_CASE("rng streams are reproducible and independent") {
  TrialRng a(7, 1, 3), b(7, 1, 3), c(7, 2, 3);
  std::vector<std::uint64_t> xa, xb, xc;
  for (int i = 0; i < 20; ++i) {
    xa.push_back(a.below(1000));
    xb.push_back(b.below(1000));
    xc.push_back(c.below(1000));
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  TrialRng r(1, 0, 0);
  for (int i = 0; i < 500; ++i) {
    long v = r.between(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}

TEST_CASE("random samplers stay in range") {
  auto s = z2();
  auto w = enumerate_window(*s, 2, 3);
  for (std::uint64_t t = 0; t < 200; ++t) {
    TrialRng rng(3, 0, t);
    Element e = random_element(s, w, rng);
    CHECK(e.size() <= 4);
    for (const auto& [b, c] : e.terms()) CHECK(std::binary_search(w.begin(), w.end(), b, BasisOrder{}));
    CHECK(sgn(random_nonzero_rat(rng)) != 0);
    Lattice g = random_lattice(rng, 1);
    CHECK(g.rank() >= 1);
    if (auto j = random_valid_j(g, rng)) {
      auto sp = spec_validate(g, *j);
      CHECK_FALSE(sp->witt_degenerate);
    }
  }
}

TEST_CASE("jacobi report is deterministic") {
  auto s = z2();
  SuiteReport a = suite_jacobi(s, {2, 2}, 50, 9);
  SuiteReport b = suite_jacobi(s, {2, 2}, 50, 9);
  CHECK(a.ok());
  CHECK(a.trials == 50);
  CHECK(a.to_text(false) == b.to_text(false));
  CHECK(a.to_json(false).dump() == b.to_json(false).dump());
  CHECK(a.to_text(false).find("wall_ms") == std::string::npos);
  CHECK(a.to_text(false).find("result: PASS") != std::string::npos);

  SuiteReport none = suite_jacobi(s, {2, 2}, 0, 9);
  CHECK(none.ok());
  CHECK(none.trials == 0);
}

TEST_CASE("corrupted bracket failures replay in isolation") {
  auto s = z2();
  SuiteReport r = suite_jacobi(s, {2, 2}, 40, 4, corrupted);
  REQUIRE_FALSE(r.ok());
  CHECK(r.to_text(false).find("result: FAIL") != std::string::npos);
  for (const auto& f : r.failures) {
    Element x = parse_element(s, f.inputs.at("u"));
    Element y = parse_element(s, f.inputs.at("v"));
    Element z = parse_element(s, f.inputs.at("w"));
    auto J = [&](const Element& a, const Element& b, const Element& c) { return corrupted(a, corrupted(b, c)); };
    CHECK_FALSE((J(x, y, z) + J(y, z, x) + J(z, x, y)).is_zero());
    // the true bracket satisfies it
    CHECK((bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))).is_zero());
  }
  SuiteReport c = suite_bracket_consistency(s, {2, 2}, {100, 50, 50}, 4, corrupted);
  CHECK_FALSE(c.ok());
}

TEST_CASE("merge is order independent") {
  auto s = z2();
  SuiteReport a = suite_jacobi(s, {2, 2}, 20, 1, corrupted);
  SuiteReport b = suite_jacobi(s, {2, 2}, 20, 2, corrupted);
  SuiteReport ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  ab.finalize();
  ba.finalize();
  CHECK(ab.trials == 40);
  CHECK(ab.failures.size() == a.failures.size() + b.failures.size());
  auto key = [](const SuiteReport& r) {
    std::vector<std::pair<std::string, std::uint64_t>> k;
    for (const auto& f : r.failures) k.emplace_back(f.check, f.trial);
    return k;
  };
  CHECK(key(ab) == key(ba));
}

TEST_CASE("small suites pass") {
  for (auto sp : {z2(), z2(JType::Zero, JType::Zero), spec(Lattice({V("1/2", "0"), V(0, 1)}), JType::Nat, JType::Zero)}) {
    CHECK(suite_bracket_consistency(sp, {2, 2}, {100, 50, 50}, 2).ok());
    CHECK(suite_derivations(sp, {2, 2}, 30, 2).ok());
    CHECK(suite_iso(sp, {3, 30, {2, 2}}, 2).ok());
    CHECK(suite_locality(sp, {1, 2}, 4, 2).ok());
  }
  CHECK(suite_decide(20, 3).ok());
  CHECK(suite_moduli(20, 5, 20, 3).ok());
}

TEST_CASE("simplicity probe") {
  auto s = z2();
  SimplicityResult r = simplicity_probe(E(s, "x[1,1;0,0]"), {1, 1}, 6);
  CHECK(r.reached_full_window);
  CHECK(r.missed.empty());
  CHECK(r.span_dim >= enumerate_window(*s, 1, 1).size());

  auto z = z2(JType::Zero, JType::Zero);
  CHECK(simplicity_probe(E(z, "x[2,-1;0,0] - x[1,0;0,0]"), {2, 0}, 6).reached_full_window);
  // depth 0 does no bracketing
  SimplicityResult d0 = simplicity_probe(E(z, "x[1,0;0,0]"), {1, 0}, 0);
  CHECK_FALSE(d0.reached_full_window);
  CHECK(d0.span_dim == 1);

  try {
    simplicity_probe(Element(s), {1, 1}, 3);
    FAIL("expected ZeroSeed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroSeed);
  }
  CHECK(suite_simplicity(z, {2, 1}, 6, 3, 5).ok());
}

}
