#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "p2walls/chern.hpp"
#include "p2walls/error.hpp"
#include "p2walls/lattice.hpp"
#include "p2walls/rational.hpp"

namespace p2walls {

/// A point (s, t) of the upper half plane, stored as (s, t^2) so that every
/// computation stays rational. t itself is never formed.
struct StabilityPoint {
  Rational s;
  Rational t_sq;

  friend bool operator==(const StabilityPoint&, const StabilityPoint&) = default;
};

inline StabilityPoint make_point(Rational s, Rational t_sq) {
  if (t_sq.sign() <= 0) throw Error(ErrorKind::InvalidArgument, "t^2 must be positive, got " + t_sq.str());
  return StabilityPoint{std::move(s), std::move(t_sq)};
}

/// Z_{s,t}(v) = re + i t im_coeff.
struct ChargeParts {
  Rational re;
  Rational im_coeff;
};

inline ChargeParts charge_parts(const ChernCharacter& v, const StabilityPoint& pt) {
  Rational r(v.r()), c(v.c());
  Rational re = -(v.d() - pt.s * c + r * (square(pt.s) - pt.t_sq) / Rational(2));
  Rational im = c - r * pt.s;
  return {re, im};
}

/// B > 0, or B = 0 and A < 0: the numeric image of a nonzero heart object.
inline bool in_numeric_heart_at(const ChernCharacter& v, const StabilityPoint& pt) {
  auto z = charge_parts(v, pt);
  return z.im_coeff.sign() > 0 || (z.im_coeff.is_zero() && z.re.sign() < 0);
}

/// Numeric heart test in s alone. Necessary only: the heart is defined
/// cohomologically and the t-dependent boundary case is left to callers.
inline bool in_numeric_heart(const ChernCharacter& v, const Rational& s) {
  if ((Rational(v.c()) - Rational(v.r()) * s).sign() > 0) return true;
  if (v.r() == 0 && v.c() > 0) return true;
  return v.r() == 0 && v.c() == 0 && v.d().sign() > 0;
}

enum class PhaseOrder { Less, Equal, Greater };

/// D = A_x B_y - A_y B_x. D > 0 iff mu(x) < mu(y) for heart classes.
inline Rational phase_determinant(const ChernCharacter& x, const ChernCharacter& y, const StabilityPoint& pt) {
  auto zx = charge_parts(x, pt);
  auto zy = charge_parts(y, pt);
  return zx.re * zy.im_coeff - zy.re * zx.im_coeff;
}

/// Orders mu_{s,t}(x) against mu_{s,t}(y) without forming t.
inline PhaseOrder phase_compare(const ChernCharacter& x, const ChernCharacter& y, const StabilityPoint& pt) {
  if (!in_numeric_heart_at(x, pt)) throw Error(ErrorKind::NotInNumericHeart, x.str() + " at s=" + pt.s.str() + ", t^2=" + pt.t_sq.str());
  if (!in_numeric_heart_at(y, pt)) throw Error(ErrorKind::NotInNumericHeart, y.str() + " at s=" + pt.s.str() + ", t^2=" + pt.t_sq.str());
  int sign = phase_determinant(x, y, pt).sign();
  if (sign > 0) return PhaseOrder::Less;
  if (sign < 0) return PhaseOrder::Greater;
  return PhaseOrder::Equal;
}

struct Semicircle {
  Rational center;
  Rational radius_sq;
  friend bool operator==(const Semicircle&, const Semicircle&) = default;
};

struct VerticalLine {
  Rational s;
  friend bool operator==(const VerticalLine&, const VerticalLine&) = default;
};

/// A potential wall W_{v,v'} with the pair of classes that produced it.
struct Wall {
  std::variant<Semicircle, VerticalLine> shape;
  std::pair<ChernCharacter, ChernCharacter> generators;

  bool is_semicircle() const { return std::holds_alternative<Semicircle>(shape); }
  const Semicircle& semicircle() const { return std::get<Semicircle>(shape); }
  const VerticalLine& vertical() const { return std::get<VerticalLine>(shape); }

  /// Same locus in the half plane; generators are ignored.
  bool same_locus(const Wall& other) const { return shape == other.shape; }
};

/// Coefficients of (s^2 + t^2) p - 2 s q + 2 m = 0.
struct WallCoefficients {
  Rational p;
  Rational q;
  Rational m;
};

inline WallCoefficients wall_coefficients(const ChernCharacter& v, const ChernCharacter& w) {
  Rational r(v.r()), c(v.c()), r2(w.r()), c2(w.c());
  return {r * c2 - r2 * c, r * w.d() - r2 * v.d(), c * w.d() - c2 * v.d()};
}

inline Wall wall_through(const ChernCharacter& v, const ChernCharacter& v2) {
  auto [p, q, m] = wall_coefficients(v, v2);
  if (p.is_zero()) {
    if (q.is_zero()) {
      if (m.is_zero()) throw Error(ErrorKind::DegenerateWall, v.str() + " and " + v2.str() + " have equal slope everywhere");
      throw Error(ErrorKind::EmptyWall, v.str() + " and " + v2.str() + " never have equal slope");
    }
    return Wall{VerticalLine{m / q}, {v, v2}};
  }
  Rational center = q / p;
  Rational radius_sq = square(center) - Rational(2) * m / p;
  if (radius_sq.sign() <= 0) {
    throw Error(ErrorKind::EmptyWall, "wall of " + v.str() + " and " + v2.str() + " has radius^2 " + radius_sq.str());
  }
  return Wall{Semicircle{center, radius_sq}, {v, v2}};
}

enum class Side { Inside, On, Outside };

/// Geometric side of a point. For vertical lines Inside means s < abscissa.
inline Side wall_side(const Wall& w, const StabilityPoint& pt) {
  int sign;
  if (w.is_semicircle()) {
    const auto& sc = w.semicircle();
    sign = (square(pt.s - sc.center) + pt.t_sq - sc.radius_sq).sign();
  } else {
    sign = (pt.s - w.vertical().s).sign();
  }
  if (sign < 0) return Side::Inside;
  if (sign > 0) return Side::Outside;
  return Side::On;
}

inline bool wall_contains(const Wall& w, const StabilityPoint& pt) { return wall_side(w, pt) == Side::On; }

/// t^2 at which a semicircle meets the vertical ray at s, if it does.
inline std::optional<Rational> crossing_t_sq(const Wall& w, const Rational& s) {
  if (!w.is_semicircle()) return std::nullopt;
  Rational t_sq = w.semicircle().radius_sq - square(s - w.semicircle().center);
  if (t_sq.sign() <= 0) return std::nullopt;
  return t_sq;
}

/// The linear functional x -> D(x, v) at pt, in lattice coordinates.
inline lattice::RatVec phase_functional(const ChernCharacter& v, const StabilityPoint& pt) {
  // A and B of the basis classes (1,0,0), (0,1,1/2), (0,0,1).
  lattice::RatVec a_coef{-(square(pt.s) - pt.t_sq) / Rational(2), pt.s - Rational(1, 2), Rational(-1)};
  lattice::RatVec b_coef{-pt.s, Rational(1), Rational(0)};
  auto zv = charge_parts(v, pt);
  lattice::RatVec out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = a_coef[i] * zv.im_coeff - b_coef[i] * zv.re;
  return out;
}

/// The potential wall of v passing through pt. The second generator is a
/// lattice class of equal slope at pt, taken from the integral kernel of
/// the phase functional.
inline Wall wall_through_point(const ChernCharacter& v, const StabilityPoint& pt) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroClass, "no wall through a point for the zero class");
  auto functional = phase_functional(v, pt);
  if (functional[0].is_zero() && functional[1].is_zero() && functional[2].is_zero()) {
    throw Error(ErrorKind::DegenerateWall, "Z(" + v.str() + ") vanishes at s=" + pt.s.str() + ", t^2=" + pt.t_sq.str());
  }
  auto kernel = lattice::integer_kernel(lattice::primitive_integer_vector(functional));
  auto vx = v.coords();
  for (const auto& k : kernel) {
    auto cr = lattice::cross({Rational(vx[0]), Rational(vx[1]), Rational(vx[2])},
                             {Rational(k[0]), Rational(k[1]), Rational(k[2])});
    if (cr[0].is_zero() && cr[1].is_zero() && cr[2].is_zero()) continue;
    Wall w = wall_through(v, ChernCharacter::from_coords(k));
    if (!wall_contains(w, pt)) throw Error(ErrorKind::NotOnWall, "internal: constructed wall misses the sample point");
    return w;
  }
  throw Error(ErrorKind::DegenerateWall, "no second generator for " + v.str());
}

}  // namespace p2walls
