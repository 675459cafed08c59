#include "blockalg/lattice.hpp"

#include "blockalg/error.hpp"

namespace blockalg {

namespace {

Int lcm_of_denominators(const std::vector<Vec2>& vs) {
  Int d = 1;
  for (const auto& v : vs) {
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.c1.get_den_mpz_t());
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.c2.get_den_mpz_t());
  }
  return d;
}

Int to_int(const Rat& r) {
  // caller guarantees r is integral
  return r.get_num();
}

}  // namespace

Lattice::Lattice(std::vector<Vec2> generators) : generators_(std::move(generators)) {
  // Integer row reduction after clearing denominators. The pivot row (c,s)
  // absorbs first coordinates by extended gcd; everything left over lies in
  // {0}×ℤ and accumulates into h.
  const Int denom = lcm_of_denominators(generators_);
  Int c = 0, s = 0, h = 0;
  for (const auto& g : generators_) {
    Int x = to_int(Rat(g.c1 * denom));
    Int y = to_int(Rat(g.c2 * denom));
    if (x == 0) {
      mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), y.get_mpz_t());
      continue;
    }
    Int gcd, u, v;
    mpz_gcdext(gcd.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t(), x.get_mpz_t());
    Int new_s = u * s + v * y;
    Int rest = (x / gcd) * s - (c / gcd) * y;
    mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), rest.get_mpz_t());
    c = gcd;
    s = new_s;
  }
  if (c != 0 && h != 0) mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), h.get_mpz_t());

  auto scaled = [&](const Int& n) {
    Rat r(n, denom);
    r.canonicalize();
    return r;
  };
  if (c != 0) basis_.push_back({scaled(c), scaled(s)});
  if (h != 0) basis_.push_back({Rat(0), scaled(h)});
}

std::optional<std::vector<Int>> Lattice::coordinates(const Vec2& v) const {
  std::vector<Int> k;
  if (basis_.empty()) {
    if (!v.is_zero()) return std::nullopt;
    return k;
  }
  const Vec2& b0 = basis_[0];
  Vec2 rest = v;
  if (sgn(b0.c1) != 0) {
    Rat k1 = v.c1 / b0.c1;
    if (!is_integer(k1)) return std::nullopt;
    k.push_back(k1.get_num());
    rest = v - k1 * b0;
  } else if (sgn(v.c1) != 0) {
    return std::nullopt;
  }
  // rest lies in {0}×ℚ; it must be a multiple of the (0,h) vector if any.
  const Vec2* vertical = nullptr;
  if (sgn(b0.c1) == 0) vertical = &b0;
  else if (basis_.size() == 2) vertical = &basis_[1];
  if (vertical == nullptr) {
    if (!rest.is_zero()) return std::nullopt;
    return k;
  }
  Rat k2 = rest.c2 / vertical->c2;
  if (!is_integer(k2)) return std::nullopt;
  k.push_back(k2.get_num());
  return k;
}

bool Lattice::contains(const Vec2& v) const { return coordinates(v).has_value(); }

Vec2 Lattice::combine(const std::vector<Int>& coords) const {
  if (coords.size() != basis_.size())
    throw Error(ErrorCode::InvalidArgument, "coordinate count does not match lattice rank");
  Vec2 v{Rat(0), Rat(0)};
  for (std::size_t i = 0; i < coords.size(); ++i) v = v + Rat(coords[i]) * basis_[i];
  return v;
}

Rat Lattice::proj_generator(int p) const {
  Rat g(0);
  for (const auto& b : basis_) g = rat_gcd(g, b[p]);
  return g;
}

Lattice::Echelon Lattice::echelon() const {
  Echelon e{Rat(0), Rat(0), Rat(0)};
  for (const auto& b : basis_) {
    if (sgn(b.c1) != 0) {
      e.c = b.c1;
      e.s = b.c2;
    } else {
      e.h = b.c2;
    }
  }
  return e;
}

std::string Lattice::to_string() const {
  std::string out = "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) out += ",";
    out += blockalg::to_string(basis_[i]);
  }
  return out + ">";
}

bool lattice_equals(const Lattice& a, const Lattice& b) {
  for (const auto& v : a.basis())
    if (!b.contains(v)) return false;
  for (const auto& v : b.basis())
    if (!a.contains(v)) return false;
  return true;
}

Rat hom_eval(const GroupHom& mu, const Lattice& lattice, const Vec2& v) {
  if (mu.values.size() != lattice.basis().size())
    throw Error(ErrorCode::InvalidArgument, "homomorphism needs one value per basis vector");
  auto k = lattice.coordinates(v);
  if (!k) throw Error(ErrorCode::NotInLattice, blockalg::to_string(v) + " not in " + lattice.to_string());
  Rat total(0);
  for (std::size_t i = 0; i < k->size(); ++i) total += Rat((*k)[i]) * mu.values[i];
  return total;
}

GroupHom projection_hom(const Lattice& lattice, int p) {
  GroupHom mu;
  for (const auto& b : lattice.basis()) mu.values.push_back(b[p]);
  return mu;
}

ShearScale::ShearScale(Rat a_, Rat b_, ShearGroup g) : a(std::move(a_)), b(std::move(b_)), group(g) {
  if (sgn(a) == 0) throw Error(ErrorCode::InvalidArgument, "shear-scale needs a != 0");
  if (group == ShearGroup::G2 && sgn(b) != 0)
    throw Error(ErrorCode::InvalidArgument, "G2 elements have b = 0");
}

Vec2 apply_group_element(const ShearScale& g, const Vec2& v) {
  return {v.c1 / g.a, v.c2 - v.c1 * g.b / g.a};
}

Lattice map_lattice(const ShearMap& m, const Lattice& lattice) {
  if (sgn(m.a) == 0) throw Error(ErrorCode::InvalidArgument, "map_lattice needs a != 0");
  std::vector<Vec2> images;
  for (const auto& b : lattice.basis()) images.push_back(m(b));
  return Lattice(std::move(images));
}

std::string CanonicalDescriptor::to_string() const {
  std::string out;
  switch (shape) {
    case CanonShape::R0: out = "R0"; break;
    case CanonShape::R1X: out = "R1X"; break;
    case CanonShape::R1Y: out = "R1Y"; break;
    case CanonShape::R2: out = "R2"; break;
  }
  static const char* const r1x_names[] = {"|s|"};
  static const char* const r1y_names[] = {"h"};
  static const char* const r2_names[] = {"h", "s*"};
  const char* const* names = shape == CanonShape::R1X ? r1x_names
                             : shape == CanonShape::R1Y ? r1y_names
                                                        : r2_names;
  for (std::size_t i = 0; i < params.size(); ++i)
    out += " " + std::string(names[i]) + "=" + blockalg::to_string(params[i]);
  return out;
}

CanonicalDescriptor canonical_form(const Lattice& lattice, ShearGroup group) {
  // G1 (a, b free) can scale c to 1 and shear s away; G2 (b = 0) only
  // rescales the first coordinate, so the class of s modulo h and sign
  // survives. Vectors in {0}×ℚ are fixed by both groups.
  CanonicalDescriptor d;
  const auto e = lattice.echelon();
  switch (lattice.rank()) {
    case 0:
      d.shape = CanonShape::R0;
      break;
    case 1:
      if (sgn(e.c) != 0) {
        d.shape = CanonShape::R1X;
        if (group == ShearGroup::G2) d.params.push_back(abs(e.s));
      } else {
        d.shape = CanonShape::R1Y;
        d.params.push_back(e.h);
      }
      break;
    default:
      d.shape = CanonShape::R2;
      d.params.push_back(e.h);
      if (group == ShearGroup::G2) {
        Rat up = rat_mod(e.s, e.h);
        Rat down = rat_mod(-e.s, e.h);
        d.params.push_back(up < down ? up : down);
      }
      break;
  }
  return d;
}

OmegaClass omega_class(const Lattice& lattice) {
  const bool p1 = sgn(lattice.proj_generator(1)) != 0;
  const bool p2 = sgn(lattice.proj_generator(2)) != 0;
  return {p1 && p2, p2, p1, true};
}

}  // namespace blockalg
