#include <doctest.h>

#include <set>

#include "blockalg/error.hpp"
#include "blockalg/harness.hpp"
#include "blockalg/lattice.hpp"
#include "support.hpp"

using namespace blockalg;
using namespace testsupport;

TEST_SUITE("lattice") {

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(R("6/4")) == "3/2");
  CHECK(to_string(R("-0/5")) == "0");
  CHECK(to_string(R("+7")) == "7");
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("abc"), Error);
  CHECK(rat_mod(R("-3"), R("5")) == 2);
  CHECK(rat_mod(R("7/2"), R("5")) == R("7/2"));
  CHECK(rat_gcd(R("3"), R("5")) == 1);
  CHECK(rat_gcd(R("1/2"), R("1/3")) == R("1/6"));
  CHECK(binomial(5, 2) == 10);
  CHECK(factorial(5) == 120);
  CHECK(pow(R("-2"), 3) == -8);
}

TEST_CASE("basis in echelon form") {
  Lattice l({V(2, 3), V(0, 5)});
  REQUIRE(l.rank() == 2);
  CHECK(l.basis()[0] == V(2, 3));
  CHECK(l.basis()[1] == V(0, 5));

  CHECK(Lattice().rank() == 0);
  CHECK(Lattice({V(0, 0)}).rank() == 0);

  Lattice half({V("1/2", "0"), V(1, 0)});
  REQUIRE(half.rank() == 1);
  CHECK(half.basis()[0] == V("1/2", "0"));

  // s is reduced into [0, h)
  Lattice shifted({V(1, -3), V(0, 5)});
  CHECK(shifted.basis()[0] == V(1, 2));
  // rank-1 vector in the second axis
  Lattice y({V(0, -4)});
  CHECK(y.basis()[0] == V(0, 4));
}

TEST_CASE("membership agrees with a brute-force span over a coefficient box") {
  const std::vector<std::vector<Vec2>> gen_sets = {
      {V(2, 3), V(0, 5)},
      {V("1/2", "0"), V(1, 0)},
      {V("1/2", "0"), V(0, 1)},
      {V(4, 6), V(6, 9)},
      {V(2, 1), V(1, 2), V(3, 3)},
      {V("2/3", "1/2"), V("0", "3/2")},
      {V(0, 4)},
  };
  for (const auto& gens : gen_sets) {
    Lattice l(gens);
    for (const auto& g : gens) CHECK(l.contains(g));
    for (const auto& b : l.basis()) CHECK(span_contains_brute(gens, b));
    for (long n = -6; n <= 6; ++n)
      for (long m = -6; m <= 6; ++m)
        for (long d : {1, 2, 3, 6}) {
          Vec2 v{Rat(n, d), Rat(m, d)};
          v.c1.canonicalize();
          v.c2.canonicalize();
          CHECK_MESSAGE(l.contains(v) == span_contains_brute(gens, v, gens.size() > 2 ? 6 : 12), l.to_string(), " ", to_string(v));
        }
  }
}

TEST_CASE("contains examples") {
  Lattice l({V("1/2", "0"), V(0, 1)});
  CHECK(l.contains(V("3/2", "2")));
  CHECK_FALSE(l.contains(V("1/3", "0")));
  CHECK(l.contains(V(0, 0)));
  CHECK(Lattice().contains(V(0, 0)));
}

TEST_CASE("lattice equality") {
  CHECK(lattice_equals(Lattice({V(2, 3), V(0, 5)}), Lattice({V(2, 3), V(2, 8)})));
  CHECK(lattice_equals(Z2(), Z2()));
  CHECK_FALSE(lattice_equals(Lattice({V(0, 5)}), Lattice({V(0, 7)})));
}

TEST_CASE("projection generators") {
  Lattice l({V(2, 3), V(0, 5)});
  CHECK(l.proj_generator(1) == 2);
  CHECK(l.proj_generator(2) == 1);
  CHECK(Lattice().proj_generator(1) == 0);
  CHECK(Lattice().proj_generator(2) == 0);
  CHECK(Lattice({V("1/2", "1/3"), V("0", "1/4")}).proj_generator(2) == R("1/12"));
}

TEST_CASE("group elements act by v g^-1") {
  CHECK(apply_group_element(ShearScale(R("2"), R("1")), V(1, 1)) == V("1/2", "1/2"));
  CHECK(apply_group_element(ShearScale(R("1"), R("0")), V(4, 7)) == V(4, 7));
  CHECK(apply_group_element(ShearScale(R("2"), R("0")), V(0, 3)) == V(0, 3));
  // matrix inverse oracle: v g^-1 g = v with g = ((a,b),(0,1))
  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{{"3", "-1/2"}, {"-2/3", "5"}}) {
    ShearScale g(R(a), R(b));
    Vec2 v = V("7/3", "-2");
    Vec2 w = apply_group_element(g, v);
    CHECK(Vec2{w.c1 * g.a, w.c1 * g.b + w.c2} == v);
  }
  CHECK_THROWS_AS(ShearScale(R("0"), R("1")), Error);
  CHECK_THROWS_AS(ShearScale(R("1"), R("1"), ShearGroup::G2), Error);
}

TEST_CASE("map_lattice") {
  CHECK(lattice_equals(map_lattice({R("1"), R("0")}, Z2()), Z2()));
  CHECK(lattice_equals(map_lattice({R("3"), R("1")}, Lattice({V(1, 0), V(0, 5)})), Lattice({V(3, 1), V(0, 5)})));
  Lattice m = map_lattice({R("1/2"), R("-3")}, Lattice({V(2, 3), V(0, 5)}));
  CHECK(lattice_equals(m, Lattice({V(1, -3), V(0, 5)})));
  CHECK(m.basis()[0] == V(1, 2));
  CHECK_THROWS_AS(map_lattice({R("0"), R("0")}, Z2()), Error);
}

TEST_CASE("ShearMap composition") {
  ShearMap p{R("3"), R("1")}, q{R("-1/2"), R("2")};
  Vec2 v = V("5/7", "-3");
  CHECK(q.after(p)(v) == q(p(v)));
  CHECK(p.inverse()(p(v)) == v);
}

TEST_CASE("homomorphisms") {
  GroupHom mu{{R("5"), R("7")}};
  CHECK(hom_eval(mu, Z2(), V(2, 3)) == 31);
  CHECK(hom_eval(mu, Z2(), V(0, 0)) == 0);
  CHECK_THROWS_AS(hom_eval(mu, Z2(), V("1/2", "0")), Error);
  Lattice l({V(2, 3), V(0, 5)});
  GroupHom pi1 = projection_hom(l, 1), pi2 = projection_hom(l, 2);
  for (const auto& v : {V(2, 3), V(4, 1), V(-2, 7), V(0, -5)}) {
    CHECK(hom_eval(pi1, l, v) == v.c1);
    CHECK(hom_eval(pi2, l, v) == v.c2);
  }
}

TEST_CASE("canonical forms") {
  Lattice l({V(2, 3), V(0, 5)});
  CHECK(canonical_form(l, ShearGroup::G1).to_string() == "R2 h=5");
  CHECK(canonical_form(l, ShearGroup::G2).to_string() == "R2 h=5 s*=2");
  CHECK(canonical_form(Lattice({V(0, 4)}), ShearGroup::G1).to_string() == "R1Y h=4");
  CHECK(canonical_form(Lattice({V(0, 4)}), ShearGroup::G2).to_string() == "R1Y h=4");
  CHECK(canonical_form(Lattice(), ShearGroup::G2).to_string() == "R0");
  CHECK(canonical_form(Lattice({V(3, -2)}), ShearGroup::G1).to_string() == "R1X");
  CHECK(canonical_form(Lattice({V(3, -2)}), ShearGroup::G2).to_string() == "R1X |s|=2");
}

// Independent G2 oracle: move the lattice by a sample of diagonal elements
// and read off the second coordinates (mod h) of the vectors whose first
// coordinate is +1, found by brute force over a coefficient box.
TEST_CASE("G2 canonical form agrees with an orbit-sampling oracle") {
  const std::vector<std::vector<Vec2>> cases = {
      {V(2, 3), V(0, 5)}, {V(1, 1), V(0, 4)}, {V(3, 2), V(0, 7)}, {V("1/2", "1/3"), V(0, 1)}, {V(1, 0), V(0, 3)}};
  for (const auto& gens : cases) {
    Lattice l(gens);
    const Rat h = l.echelon().h;
    const Rat c = l.echelon().c;
    Rat best = h;
    for (const Rat& a : {c, Rat(-c), Rat(c / 2), Rat(-c / 3)}) {
      ShearScale g(a, Rat(0), ShearGroup::G2);
      std::vector<Vec2> moved;
      for (const auto& v : l.basis()) moved.push_back(apply_group_element(g, v));
      // vectors (1, y) of the moved lattice with |k| <= 12
      for (long k1 = -12; k1 <= 12; ++k1)
        for (long k2 = -12; k2 <= 12; ++k2) {
          Vec2 v = Rat(k1) * moved[0] + Rat(k2) * moved[1];
          if (v.c1 == 1) {
            Rat y = rat_mod(v.c2, h);
            if (y < best) best = y;
          }
        }
    }
    auto d = canonical_form(l, ShearGroup::G2);
    REQUIRE(d.params.size() == 2);
    CHECK_MESSAGE(d.params[1] == best, l.to_string());
  }
}

TEST_CASE("canonical forms are invariant along random orbits and separate h") {
  for (std::uint64_t t = 0; t < 50; ++t) {
    TrialRng rng(99, 7, t);
    Lattice l = random_lattice(rng, 0);
    for (ShearGroup grp : {ShearGroup::G1, ShearGroup::G2}) {
      auto base = canonical_form(l, grp);
      for (int k = 0; k < 5; ++k) {
        Rat a = random_nonzero_rat(rng);
        Rat b = grp == ShearGroup::G1 ? random_nonzero_rat(rng) : Rat(0);
        std::vector<Vec2> moved;
        for (const auto& v : l.basis()) moved.push_back(apply_group_element(ShearScale(a, b, grp), v));
        CHECK(canonical_form(Lattice(moved), grp) == base);
      }
    }
  }
  CHECK_FALSE(canonical_form(Lattice({V(1, 0), V(0, 5)}), ShearGroup::G1) ==
              canonical_form(Lattice({V(1, 0), V(0, 7)}), ShearGroup::G1));
  CHECK_FALSE(canonical_form(Lattice({V(1, 1), V(0, 5)}), ShearGroup::G2) ==
              canonical_form(Lattice({V(1, 2), V(0, 5)}), ShearGroup::G2));
  CHECK(canonical_form(Lattice({V(1, 2), V(0, 5)}), ShearGroup::G2) ==
        canonical_form(Lattice({V(1, 3), V(0, 5)}), ShearGroup::G2));
}

TEST_CASE("omega classes") {
  CHECK(omega_class(Lattice({V(2, 3), V(0, 5)})) == OmegaClass{true, true, true, true});
  CHECK(omega_class(Lattice({V(0, 5)})) == OmegaClass{false, true, false, true});
  CHECK(omega_class(Lattice()) == OmegaClass{false, false, false, true});
}

}
