#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "p2walls/chern.hpp"
#include "p2walls/error.hpp"
#include "p2walls/lattice.hpp"
#include "p2walls/rational.hpp"
#include "p2walls/stability.hpp"

namespace p2walls {

/// Index k of the heart A(k) = <O(k-2)[2], O(k-1)[1], O(k)>.
struct HeartIndex {
  Integer k;
  friend bool operator==(const HeartIndex&, const HeartIndex&) = default;
};

using Triple = std::array<Integer, 3>;

inline Integer dot(const Triple& a, const Triple& b) { return lattice::dot(a, b); }

inline std::string to_string(const Triple& t) {
  return t[0].get_str() + "," + t[1].get_str() + "," + t[2].get_str();
}

/// n0 ch(O(k-2)) - n1 ch(O(k-1)) + n2 ch(O(k)) = sign * v, all n_i >= 0.
struct SignedDimensionVector {
  int sign = 1;
  Triple n;
  friend bool operator==(const SignedDimensionVector&, const SignedDimensionVector&) = default;
};

struct Polarization {
  Triple a;
  friend bool operator==(const Polarization&, const Polarization&) = default;
};

/// w together with the evidence for its sign: the torsion test class x*,
/// D(x*, v) > 0 at the point, and chi(w, x*) > 0.
struct OrientedOrthogonalClass {
  ChernCharacter w;
  ChernCharacter test_class;
  Rational test_phase_determinant;
  Rational test_pairing;
};

/// Heuristic heart for a ray at s. Not guaranteed feasible; see dimension_vector.
inline HeartIndex suggest_heart(const Rational& s) { return HeartIndex{s.floor() + 1}; }

/// Solves n0 ch(O(k-2)) - n1 ch(O(k-1)) + n2 ch(O(k)) = v. The three line
/// bundles form a Z-basis of K(P^2), so the solution is integral.
inline Triple transition_solve(const ChernCharacter& v, const HeartIndex& k) {
  std::array<ChernCharacter, 3> cols{line_bundle(Integer(k.k - 2)), -line_bundle(Integer(k.k - 1)), line_bundle(k.k)};
  std::array<lattice::IntVec, 3> m;
  for (std::size_t j = 0; j < 3; ++j) m[j] = cols[j].coords();
  auto rhs = v.coords();
  // Cramer's rule on lattice coordinates; the determinant is +-1.
  auto det3 = [](const lattice::IntVec& a, const lattice::IntVec& b, const lattice::IntVec& c) {
    return Integer(a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
                   c[0] * (a[1] * b[2] - a[2] * b[1]));
  };
  Integer det = det3(m[0], m[1], m[2]);
  Triple n{det3(rhs, m[1], m[2]) / det, det3(m[0], rhs, m[2]) / det, det3(m[0], m[1], rhs) / det};
  return n;
}

inline ChernCharacter chern_of_dimvec(const SignedDimensionVector& dv, const HeartIndex& k) {
  ChernCharacter out = dv.n[0] * line_bundle(Integer(k.k - 2)) - dv.n[1] * line_bundle(Integer(k.k - 1)) +
                       dv.n[2] * line_bundle(k.k);
  return dv.sign > 0 ? out : -out;
}

inline SignedDimensionVector dimension_vector(const ChernCharacter& v, const HeartIndex& k) {
  Triple n = transition_solve(v, k);
  auto nonneg = [](const Triple& t) { return t[0] >= 0 && t[1] >= 0 && t[2] >= 0; };
  if (nonneg(n)) return {1, n};
  Triple m{-n[0], -n[1], -n[2]};
  if (nonneg(m)) return {-1, m};
  throw Error(ErrorKind::HeartInfeasible, "v=" + v.str() + " in A(" + k.k.get_str() + "): +v gives (" + to_string(n) +
                                              "), -v gives (" + to_string(m) + ")");
}

/// Functional x -> chi_tensor(x, g) on lattice coordinates.
inline lattice::RatVec tensor_functional(const ChernCharacter& g) {
  return {euler_form_tensor(make_chern(1, 0, 0), g), euler_form_tensor(make_chern(0, 1, Rational(1, 2)), g),
          euler_form_tensor(point_class(), g)};
}

inline bool proportional(const ChernCharacter& a, const ChernCharacter& b) {
  auto x = a.coords();
  auto y = b.coords();
  return x[1] * y[2] == x[2] * y[1] && x[2] * y[0] == x[0] * y[2] && x[0] * y[1] == x[1] * y[0];
}

/// The torsion class (0, 1, d*) with d* <= s - N a half-odd integer and
/// N >= 1 chosen so that D(x*, v) > 0 at pt.
inline ChernCharacter orientation_test_class(const ChernCharacter& v, const StabilityPoint& pt) {
  auto zv = charge_parts(v, pt);
  Integer n = 1;
  if (zv.im_coeff.sign() > 0) {
    n = std::max(Integer(1), Integer((zv.re / zv.im_coeff).floor() + 1));
  } else if (!(zv.im_coeff.is_zero() && zv.re.sign() < 0)) {
    throw Error(ErrorKind::NotInNumericHeart, v.str() + " at s=" + pt.s.str() + ", t^2=" + pt.t_sq.str());
  }
  Rational target = pt.s - Rational(n);
  Rational d = Rational((target - Rational(1, 2)).floor()) + Rational(1, 2);
  return make_chern(Integer(0), Integer(1), d);
}

/// Primitive lattice class perpendicular (tensor pairing) to the wall's
/// plane, oriented so that chi(w, x) > 0 iff mu(x) < mu(v) at pt.
inline OrientedOrthogonalClass orthogonal_class(const ChernCharacter& v, const Wall& wall, const StabilityPoint& pt) {
  if (!wall_contains(wall, pt)) throw Error(ErrorKind::NotOnWall, "s=" + pt.s.str() + ", t^2=" + pt.t_sq.str());
  const auto& [g1, g2] = wall.generators;
  if (g1.is_zero() || g2.is_zero() || proportional(g1, g2)) {
    throw Error(ErrorKind::DegenerateWall, "generators " + g1.str() + " and " + g2.str() + " span no plane");
  }
  auto normal = lattice::cross(tensor_functional(g1), tensor_functional(g2));
  auto w = ChernCharacter::from_coords(lattice::primitive_integer_vector(normal));
  if (!euler_form_tensor(w, v).is_zero()) {
    throw Error(ErrorKind::InvalidArgument, v.str() + " is not in the plane spanned by the wall generators");
  }
  ChernCharacter x = orientation_test_class(v, pt);
  Rational pairing = euler_form_tensor(w, x);
  if (pairing.sign() < 0) {
    w = -w;
    pairing = -pairing;
  }
  if (pairing.is_zero()) throw Error(ErrorKind::DegenerateWall, "orientation test class is orthogonal to w");
  return {w, x, phase_determinant(x, v, pt), pairing};
}

struct QuiverDatum {
  HeartIndex k;
  SignedDimensionVector dimvec;
  Polarization polarization;
  OrientedOrthogonalClass w;
};

/// a_i = sign * (-1)^i chi(w, O(k-2+i)).
inline QuiverDatum polarization(const ChernCharacter& v, const Wall& wall, const StabilityPoint& pt,
                                const HeartIndex& k) {
  auto dv = dimension_vector(v, k);
  auto o = orthogonal_class(v, wall, pt);
  Triple a;
  for (int i = 0; i < 3; ++i) {
    Integer value = euler_form_tensor(o.w, line_bundle(Integer(k.k - 2 + i))).to_integer();
    if (i == 1) value = -value;
    a[i] = dv.sign > 0 ? value : Integer(-value);
  }
  if (dot(a, dv.n) != 0) throw Error(ErrorKind::BadPolarization, "internal: a.n != 0");
  return {k, dv, Polarization{a}, o};
}

struct KingCandidate {
  Triple b;
  Integer weight;
  friend bool operator==(const KingCandidate&, const KingCandidate&) = default;
};

/// Every subvector 0 <= b <= n, b != 0, n with a.b <= 0, sorted by weight and
/// then lexicographically. Exhaustive, so the cost is the grid size.
inline std::vector<KingCandidate> king_candidates(const SignedDimensionVector& n, const Polarization& a) {
  if (dot(a.a, n.n) != 0) {
    throw Error(ErrorKind::BadPolarization, "a.n = " + dot(a.a, n.n).get_str() + " for a=(" + to_string(a.a) +
                                                "), n=(" + to_string(n.n) + ")");
  }
  std::vector<KingCandidate> out;
  Triple b;
  for (b[0] = 0; b[0] <= n.n[0]; ++b[0]) {
    for (b[1] = 0; b[1] <= n.n[1]; ++b[1]) {
      for (b[2] = 0; b[2] <= n.n[2]; ++b[2]) {
        if (lattice::is_zero(b) || b == n.n) continue;
        Integer weight = dot(a.a, b);
        if (weight <= 0) out.push_back({b, weight});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const KingCandidate& x, const KingCandidate& y) {
    if (x.weight != y.weight) return x.weight < y.weight;
    return x.b < y.b;
  });
  return out;
}

}  // namespace p2walls
