#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "p2walls/chern.hpp"
#include "p2walls/error.hpp"
#include "p2walls/lattice.hpp"
#include "p2walls/quiver.hpp"
#include "p2walls/stability.hpp"

namespace p2walls {

/// The two distinguished classes of v-perp. The curve class is the
/// anti-canonical cubic, i.e. 3 hyperplanes:
///   u0 = (-r, 0, chi(v)),  u1 = (0, -3r, 9r/2 + 3c).
/// For rank zero both can be multiples of the point class.
struct UClasses {
  ChernCharacter u0;
  ChernCharacter u1;
  bool degenerate = false;  // u0, u1 linearly dependent
};

inline UClasses u_classes(const ChernCharacter& v) {
  ChernCharacter u0 = make_chern(Integer(-v.r()), Integer(0), Rational(euler_characteristic(v)));
  ChernCharacter u1 = make_chern(Integer(0), Integer(-3 * v.r()),
                                 Rational(Integer(9) * v.r(), Integer(2)) + Rational(Integer(3) * v.c()));
  return {u0, u1, proportional(u0, u1)};
}

/// u1 is numerically the anti-canonical class of the Gieseker moduli space.
inline ChernCharacter neg_canonical_class(const ChernCharacter& v) { return u_classes(v).u1; }

/// Integral basis (e1, e2) of {u : chi_tensor(u, v) = 0}, in row Hermite
/// normal form on lattice coordinates.
struct PerpBasis {
  ChernCharacter e1;
  ChernCharacter e2;
  ChernCharacter v;
};

inline PerpBasis perp_basis(const ChernCharacter& v) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroClass, "v-perp of the zero class is the whole lattice");
  auto f = lattice::primitive_integer_vector(tensor_functional(v));
  auto k = lattice::integer_kernel(f);
  return {ChernCharacter::from_coords(k[0]), ChernCharacter::from_coords(k[1]), v};
}

struct PicCoordinate {
  Rational x1;
  Rational x2;
  friend bool operator==(const PicCoordinate&, const PicCoordinate&) = default;
};

/// Coordinates of u in the basis, or nothing when u is not in its span.
inline std::optional<PicCoordinate> coordinates_in(const PerpBasis& basis, const ChernCharacter& u) {
  auto x = lattice::solve_in_span(basis.e1.coords(), basis.e2.coords(), u.coords());
  if (!x) return std::nullopt;
  return PicCoordinate{(*x)[0], (*x)[1]};
}

struct PicSample {
  Rational t_sq;
  PicCoordinate coord;
  ChernCharacter w;
  Wall wall;
};

/// For each t^2, the oriented class w of the wall of v through (s_ray, t),
/// in coordinates of perp_basis(v). Samples come out by decreasing t^2.
inline std::vector<PicSample> picard_path(const ChernCharacter& v, const Rational& s_ray,
                                          std::vector<Rational> t_sq_list) {
  auto basis = perp_basis(v);
  std::sort(t_sq_list.begin(), t_sq_list.end(), [](const Rational& a, const Rational& b) { return a > b; });
  std::vector<PicSample> out;
  out.reserve(t_sq_list.size());
  for (const auto& t_sq : t_sq_list) {
    auto pt = make_point(s_ray, t_sq);
    Wall wall = wall_through_point(v, pt);
    auto o = orthogonal_class(v, wall, pt);
    auto coord = coordinates_in(basis, o.w);
    if (!coord) throw Error(ErrorKind::InvalidArgument, "internal: w is not in v-perp");
    out.push_back({t_sq, *coord, o.w, wall});
  }
  return out;
}

}  // namespace p2walls
