#include <doctest.h>

#include "blockalg/derivations.hpp"
#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "support.hpp"

using namespace blockalg;
using namespace testsupport;

namespace {
constexpr JType N = JType::Nat;
constexpr JType Z = JType::Zero;

std::vector<std::pair<Element, Element>> random_pairs(const SpecPtr& s, std::uint64_t n, std::uint64_t seed) {
  auto basis = enumerate_window(*s, 2, 2);
  std::vector<std::pair<Element, Element>> out;
  for (std::uint64_t t = 0; t < n; ++t) {
    TrialRng rng(seed, 9, t);
    Element u = random_element(s, basis, rng);
    Element v = random_element(s, basis, rng);
    out.emplace_back(std::move(u), std::move(v));
  }
  return out;
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Parse;
}
}  // namespace

TEST_SUITE("derivations") {

TEST_CASE("named operators act by their formulas") {
  auto s = z2(N, Z);
  CHECK(to_literal(apply(make_d1(s), E(s, "x[1,1;2,0]"))) == "-x[1,2;2,0] - 2 x[1,2;1,0]");
  auto t = z2();
  CHECK(apply(make_dmu(t, GroupHom{{R("3"), R("-2")}}), E(t, "x[0,0;2,1]")).is_zero());
  CHECK(to_literal(apply(make_dmu(t, GroupHom{{R("3"), R("-2")}}), E(t, "x[1,1;2,1]"))) == "x[1,1;2,1]");
  auto zz = z2(Z, Z);
  CHECK(to_literal(apply(make_d2(zz), E(zz, "x[2,0;0,0]"))) == "-2 x[2,2;0,0]");
  CHECK(code_of([&] { make_d2(t); }) == ErrorCode::UndefinedInThisAlgebra);
  CHECK(make_d2(t, true).is_zero());
  CHECK(to_literal(apply(make_dt2(t), E(t, "x[1,0;0,3]"))) == "3 x[1,0;0,2]");
  CHECK(to_literal(apply(make_dt2(t), E(t, "x[-1,2;0,3]"))) == "3 x[-1,2;0,2]");
  auto zn = z2(Z, N);
  CHECK(to_literal(apply(make_d1bar(zn), E(zn, "x[1,2;0,1]"))) == "x[1,3;0,1] + x[1,3;0,0]");
  CHECK(code_of([&] { make_d1(t); }) == ErrorCode::UndefinedInThisAlgebra);
  CHECK(code_of([&] { make_d1bar(t); }) == ErrorCode::UndefinedInThisAlgebra);
  CHECK(code_of([&] { make_dt1(zn); }) == ErrorCode::UndefinedInThisAlgebra);
  CHECK(code_of([&] { make_dmu(t, GroupHom{{R("1")}}); }) == ErrorCode::InvalidArgument);
  // d₁ needs σ₁ ∈ Γ
  auto g = spec(Lattice({V(2, 3), V(0, 5)}), N, Z);
  CHECK(d1_undefined_reason(*g));
}

TEST_CASE("ad, zero and linearity") {
  auto s = z2();
  CHECK(ad(Element(s)).is_zero());
  CHECK(apply(Derivation(s), E(s, "x[1,1;1,1]")).is_zero());
  for (const auto& b : enumerate_window(*s, 1, 2)) {
    Element want(s);
    want.emit(b, b.alpha.c1);
    want.emit(b.alpha, b.idx.i1 - 1, b.idx.i2, Rat(b.idx.i1));
    CHECK(apply(ad(E(s, "x[0,0;0,0]")), monomial(s, b)) == reduce(want));
  }
  for (const auto& [u, v] : random_pairs(s, 50, 4)) CHECK(apply(ad(u), v) == bracket(u, v));

  Derivation d1 = ad(E(s, "x[1,0;1,0]")), d2 = make_dt2(s);
  Element u = E(s, "x[1,1;0,2] - 2 x[0,-1;1,0]"), v = E(s, "1/2 x[2,0;0,1]");
  CHECK(apply(R("3") * d1 + d2, u) == R("3") * apply(d1, u) + apply(d2, u));
  CHECK(apply(d1, u + R("-2") * v) == apply(d1, u) + R("-2") * apply(d1, v));
}

TEST_CASE("dt1 equals ad(1) minus d_pi1") {
  for (auto s : {z2(), z2(N, Z), spec(Lattice({V("1/2", "0"), V(0, 1)}), N, N)}) {
    Derivation combo = ad(E(s, "x[0,0;0,0]")) - make_dmu(s, projection_hom(s->gamma, 1));
    for (const auto& b : enumerate_window(*s, 2, 2)) {
      Element x = monomial(s, b);
      CHECK(apply(make_dt1(s), x) == apply(combo, x));
      Element want(s);
      want.emit(b.alpha, b.idx.i1 - 1, b.idx.i2, Rat(b.idx.i1));
      CHECK(apply(make_dt1(s), x) == reduce(want));
    }
  }
}

TEST_CASE("derivation law") {
  auto nz = z2(N, Z);
  CHECK(check_derivation_law(as_operator(make_d1(nz)), random_pairs(nz, 500, 1)).ok());
  auto s = z2();
  CHECK(check_derivation_law(as_operator(ad(E(s, "x[1,-1;1,0] + x[0,0;0,2]"))), random_pairs(s, 200, 2)).ok());
  LinearOp identity = [](const Element& v) { return v; };
  LawReport r = check_derivation_law(identity, random_pairs(s, 50, 3));
  CHECK_FALSE(r.ok());
  for (const auto& f : r.failures) CHECK(f.rhs == R("2") * f.lhs);
  // every pair with a nonzero bracket fails
  std::size_t nonzero = 0;
  for (const auto& [u, v] : random_pairs(s, 50, 3)) nonzero += !bracket(u, v).is_zero();
  CHECK(r.failures.size() == nonzero);
}

TEST_CASE("homogeneity") {
  auto nz = z2(N, Z);
  auto window = enumerate_window(*nz, 2, 2);
  CHECK(is_homogeneous(as_operator(make_d1(nz)), nz, sigma1(), window));
  CHECK_FALSE(is_homogeneous(as_operator(make_d1(nz)), nz, V(0, 0), window));
  CHECK(is_homogeneous(as_operator(make_dmu(nz, GroupHom{{R("1"), R("4")}})), nz, V(0, 0), window));
  CHECK(is_homogeneous(as_operator(ad(E(nz, "x[1,2;1,0]"))), nz, V(1, 2), window));
}

TEST_CASE("outer derivations are ads from the extension") {
  auto nz = z2(N, Z);
  auto zn = z2(Z, N);
  auto zz = z2(Z, Z);
  for (const auto& b : enumerate_window(*nz, 2, 3)) {
    Element x = monomial(nz, b);
    CHECK(apply(make_d1(nz), x) == extension_ad_apply(BasisIdx{sigma1(), {0, 1}}, x));
  }
  for (const auto& b : enumerate_window(*zn, 2, 3)) {
    Element x = monomial(zn, b);
    CHECK(apply(make_d1bar(zn), x) == extension_ad_apply(BasisIdx{sigma1(), {1, 0}}, x));
  }
  for (const auto& b : enumerate_window(*zz, 2, 0)) {
    Element x = monomial(zz, b);
    CHECK(apply(make_d2(zz), x) == extension_ad_apply(BasisIdx{sigma2(), {0, 0}}, x));
  }
}

TEST_CASE("nilpotence degrees") {
  auto s = z2();
  CHECK(nilpotence_degree(as_operator(make_dt2(s)), E(s, "x[1,1;0,2]"), 10) == 3);
  CHECK(nilpotence_degree(as_operator(make_dt2(s)), Element(s), 10) == 1);
  CHECK_FALSE(nilpotence_degree(as_operator(ad(E(s, "x[1,0;0,0]"))), E(s, "x[2,0;0,0]"), 5));
  // the chain through x^{σ₁,0} stops one step early
  CHECK(nilpotence_degree(as_operator(make_dt2(s)), E(s, "x[0,1;0,2]"), 10) == 2);
}

TEST_CASE("locality probe") {
  auto s = z2();
  auto dt2 = local_finiteness_probe(as_operator(make_dt2(s)), E(s, "x[1,1;1,2]"), 8);
  CHECK(dt2.kind == FinitenessVerdict::Kind::ClosureDim);
  CHECK(dt2.dim <= 3 + 1);
  auto dmu = local_finiteness_probe(as_operator(make_dmu(s, GroupHom{{R("2"), R("3")}})), E(s, "x[1,1;0,0]"), 4);
  CHECK(dmu.kind == FinitenessVerdict::Kind::ClosureDim);
  CHECK(dmu.dim == 1);
}

// Hand computation: the top coefficient of [x^β, x^{mβ}] is β₁(m−1), so
// ad^k_{x^{β,i}}(x^{2β,0}) leads with β₁·2β₁·…·kβ₁ = k!·β₁^k.
TEST_CASE("growth witness coefficients") {
  auto s = z2();
  for (const char* beta : {"x[1,0;0,0]", "x[2,1;0,0]", "x[-1,2;1,0]", "x[-2,-1;0,1]", "x[3,0;1,1]"}) {
    Element b = E(s, beta);
    const BasisIdx bi = b.terms().begin()->first;
    Element v = monomial(s, bi.alpha + bi.alpha, 0, 0);
    auto verdict = local_finiteness_probe(as_operator(ad(b)), v, 5);
    REQUIRE(verdict.kind == FinitenessVerdict::Kind::GrowthWitness);
    REQUIRE(verdict.trace.size() == 6);
    Element w = v;
    for (int k = 0; k <= 5; ++k) {
      const BasisIdx lead{Rat(k + 2) * bi.alpha, {k * bi.idx.i1, k * bi.idx.i2}};
      CHECK(verdict.trace[k].lead == lead);
      CHECK(verdict.trace[k].coeff == factorial(k) * pow(bi.alpha.c1, k));
      CHECK(w.coeff(lead) == factorial(k) * pow(bi.alpha.c1, k));
      w = bracket(b, w);
    }
  }
}

TEST_CASE("component generators") {
  auto s = z2();
  auto gens0 = der_component_generators(s, V(0, 0), 1);
  // ad(x^{0,i}) for i in {(0,0),(1,0),(0,1)}, two d_μ, ∂_{t₂}
  CHECK(gens0.size() == 3 + 2 + 1);
  auto zz = z2(Z, Z);
  auto gens2 = der_component_generators(zz, sigma2(), 0);
  bool has_d2 = false;
  for (const auto& d : gens2) has_d2 |= d.f3 != 0;
  CHECK(has_d2);
  CHECK(code_of([&] { der_component_generators(s, V("1/2", "0"), 1); }) == ErrorCode::AlphaNotInGamma);
  // Hom*: complement of 𝔽π₁ when J₁ = {0}
  CHECK(hom_star_basis(*z2(Z, N)).size() == 1);
  CHECK(hom_star_basis(*z2()).size() == 2);
}

TEST_CASE("derivation expressions") {
  auto s = z2();
  Derivation d = parse_derivation(s, "ad(x[0,0;1,0]) + 2*dt2 - dmu(1,0)");
  Element x = E(s, "x[1,1;1,2]");
  Element want = apply(ad(E(s, "x[0,0;1,0]")), x) + R("2") * apply(make_dt2(s), x) -
                 apply(make_dmu(s, GroupHom{{R("1"), R("0")}}), x);
  CHECK(apply(d, x) == want);
  CHECK(apply(parse_derivation(s, "1/2 dt1"), x) == R("1/2") * apply(make_dt1(s), x));
  CHECK(parse_derivation(s, "0").is_zero());
  CHECK(code_of([&] { parse_derivation(s, "d2"); }) == ErrorCode::UndefinedInThisAlgebra);
  CHECK(parse_derivation(s, "d2", true).is_zero());
  CHECK(code_of([&] { parse_derivation(s, "ad(x[0,0;1,0]"); }) == ErrorCode::Parse);
  CHECK(code_of([&] { parse_derivation(s, "foo"); }) == ErrorCode::Parse);
}

}
