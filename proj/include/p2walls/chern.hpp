#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>

#include "p2walls/error.hpp"
#include "p2walls/rational.hpp"

namespace p2walls {

/// Integer coordinates of a lattice class in the basis
/// (1,0,0), (0,1,1/2), (0,0,1): (r, c, d - c/2).
using LatticeCoords = std::array<Integer, 3>;

/// Chern character (ch0, ch1, ch2) = (r, c, d) of an object on P^2.
/// Degrees are in hyperplane units (H^2 = 1).
///
/// Invariant: the class lies in the Chern lattice, i.e. 2d is an integer of
/// the same parity as c (equivalently r + 3c/2 + d is an integer).
class ChernCharacter {
 public:
  /// The zero class.
  ChernCharacter() = default;

  ChernCharacter(Integer r, Integer c, Rational d) : r_(std::move(r)), c_(std::move(c)), d_(std::move(d)) {
    if (!in_lattice(r_, c_, d_)) {
      throw Error(ErrorKind::InvalidLattice,
                  "(" + r_.get_str() + "," + c_.get_str() + "," + d_.str() + ") is not in the Chern lattice of P^2");
    }
  }

  static bool in_lattice(const Integer& /*r*/, const Integer& c, const Rational& d) {
    Rational twice = d * Rational(2);
    if (!twice.is_integer()) return false;
    Integer diff = twice.to_integer() - c;
    return mpz_even_p(diff.get_mpz_t()) != 0;
  }

  static ChernCharacter from_coords(const LatticeCoords& x) {
    return ChernCharacter(x[0], x[1], Rational(x[1], Integer(2)) + Rational(x[2]));
  }

  const Integer& r() const { return r_; }
  const Integer& c() const { return c_; }
  const Rational& d() const { return d_; }

  LatticeCoords coords() const {
    return {r_, c_, (d_ - Rational(c_, Integer(2))).to_integer()};
  }

  bool is_zero() const { return r_ == 0 && c_ == 0 && d_.is_zero(); }

  std::string str() const { return r_.get_str() + "," + c_.get_str() + "," + d_.str(); }

  ChernCharacter operator-() const { return ChernCharacter(-r_, -c_, -d_, Unchecked{}); }

  friend ChernCharacter operator+(const ChernCharacter& a, const ChernCharacter& b) {
    return ChernCharacter(a.r_ + b.r_, a.c_ + b.c_, a.d_ + b.d_, Unchecked{});
  }
  friend ChernCharacter operator-(const ChernCharacter& a, const ChernCharacter& b) {
    return ChernCharacter(a.r_ - b.r_, a.c_ - b.c_, a.d_ - b.d_, Unchecked{});
  }
  friend ChernCharacter operator*(const Integer& k, const ChernCharacter& a) {
    return ChernCharacter(k * a.r_, k * a.c_, Rational(k) * a.d_, Unchecked{});
  }

  friend bool operator==(const ChernCharacter& a, const ChernCharacter& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.d_ == b.d_;
  }
  /// Lexicographic on (r, c, d).
  friend std::strong_ordering operator<=>(const ChernCharacter& a, const ChernCharacter& b) {
    if (int x = cmp(a.r_, b.r_); x != 0) return x < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int x = cmp(a.c_, b.c_); x != 0) return x < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.d_ <=> b.d_;
  }

 private:
  struct Unchecked {};
  ChernCharacter(Integer r, Integer c, Rational d, Unchecked)
      : r_(std::move(r)), c_(std::move(c)), d_(std::move(d)) {}

  friend ChernCharacter twist(const ChernCharacter& v, const Integer& m);
  friend ChernCharacter dual(const ChernCharacter& v);

  Integer r_;
  Integer c_;
  Rational d_;
};

inline ChernCharacter make_chern(const Integer& r, const Integer& c, const Rational& d) {
  return ChernCharacter(r, c, d);
}

inline ChernCharacter make_chern(long r, long c, const Rational& d) {
  return ChernCharacter(Integer(r), Integer(c), d);
}

/// Parses "r,c,d" where d may be a fraction such as "-15/2".
inline ChernCharacter parse_chern(std::string_view text) {
  auto first = text.find(',');
  auto second = (first == std::string_view::npos) ? first : text.find(',', first + 1);
  if (second == std::string_view::npos || text.find(',', second + 1) != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "expected a class 'r,c,d', got '" + std::string(text) + "'");
  }
  Rational r = Rational::parse(text.substr(0, first));
  Rational c = Rational::parse(text.substr(first + 1, second - first - 1));
  Rational d = Rational::parse(text.substr(second + 1));
  if (!r.is_integer() || !c.is_integer()) {
    throw Error(ErrorKind::ParseError, "rank and degree must be integers in '" + std::string(text) + "'");
  }
  return ChernCharacter(r.to_integer(), c.to_integer(), d);
}

inline std::string to_string(const ChernCharacter& v) { return v.str(); }

/// Derived dual at the level of Chern characters: (r, -c, d).
inline ChernCharacter dual(const ChernCharacter& v) {
  return ChernCharacter(v.r_, -v.c_, v.d_, ChernCharacter::Unchecked{});
}

/// Tensor with O(m).
inline ChernCharacter twist(const ChernCharacter& v, const Integer& m) {
  Rational mq(m);
  return ChernCharacter(v.r_, v.c_ + v.r_ * m, v.d_ + Rational(v.c_) * mq + Rational(v.r_) * mq * mq / Rational(2),
                        ChernCharacter::Unchecked{});
}

inline ChernCharacter twist(const ChernCharacter& v, long m) { return twist(v, Integer(m)); }

/// The shift [1] negates the class.
inline ChernCharacter shift(const ChernCharacter& v) { return -v; }

/// ch(O(k)) = (1, k, k^2/2).
inline ChernCharacter line_bundle(const Integer& k) { return twist(make_chern(1, 0, 0), k); }
inline ChernCharacter line_bundle(long k) { return line_bundle(Integer(k)); }

/// ch of a skyscraper sheaf.
inline ChernCharacter point_class() { return make_chern(0, 0, 1); }

/// chi(u . v) = integral of ch(u) ch(v) td(P^2), no dual.
inline Rational euler_form_tensor(const ChernCharacter& u, const ChernCharacter& v) {
  Rational r1(u.r()), c1(u.c()), r2(v.r()), c2(v.c());
  return r1 * v.d() + u.d() * r2 + c1 * c2 + Rational(3, 2) * (r1 * c2 + c1 * r2) + r1 * r2;
}

/// sum (-1)^i ext^i(u, v) = chi(dual(u) . v).
inline Rational euler_form_hom(const ChernCharacter& u, const ChernCharacter& v) {
  Rational r1(u.r()), c1(u.c()), r2(v.r()), c2(v.c());
  return r1 * v.d() + u.d() * r2 - c1 * c2 + Rational(3, 2) * (r1 * c2 - c1 * r2) + r1 * r2;
}

/// chi(v) = r + 3c/2 + d.
inline Integer euler_characteristic(const ChernCharacter& v) {
  return (Rational(v.r()) + Rational(3, 2) * Rational(v.c()) + v.d()).to_integer();
}

/// Delta = c^2 - 2 r d.
inline Rational discriminant(const ChernCharacter& v) {
  return Rational(v.c() * v.c()) - Rational(2) * Rational(v.r()) * v.d();
}

/// gcd(r, c, chi) = 1.
inline bool is_primitive(const ChernCharacter& v) {
  return gcd(gcd(v.r(), v.c()), euler_characteristic(v)) == 1;
}

/// Expected dimension of the Gieseker moduli space, 1 - r^2 - 2rd + c^2.
inline Integer gieseker_dimension(const ChernCharacter& v) {
  Rational value = Rational(1) - Rational(v.r() * v.r()) - Rational(2) * Rational(v.r()) * v.d() +
                   Rational(v.c() * v.c());
  return value.to_integer();
}

/// chi_hom(A,B) - chi_hom(B,A) = 3 (r_A c_B - r_B c_A).
///
/// When Hom and Ext^2 vanish in both directions this is
/// ext^1(B,A) - ext^1(A,B).
inline Rational lemma51_pairing(const ChernCharacter& a, const ChernCharacter& b) {
  return Rational(Integer(3) * (a.r() * b.c() - b.r() * a.c()));
}

/// ext^1(A,B) computed as -chi_hom(A,B), valid when Hom(A,B) = Ext^2(A,B) = 0.
/// A negative value is returned as is: it signals that the assumption fails.
inline Integer ext1_generic(const ChernCharacter& a, const ChernCharacter& b) {
  return (-euler_form_hom(a, b)).to_integer();
}

/// gcd of the lattice coordinates; 0 for the zero class.
inline Integer content(const ChernCharacter& v) {
  auto x = v.coords();
  Integer g = gcd(gcd(x[0], x[1]), x[2]);
  return g;
}

/// v divided by its content.
inline ChernCharacter primitive_part(const ChernCharacter& v) {
  Integer g = content(v);
  if (g == 0) throw Error(ErrorKind::ZeroClass, "the zero class has no primitive part");
  auto x = v.coords();
  for (auto& xi : x) xi /= g;
  return ChernCharacter::from_coords(x);
}

}  // namespace p2walls
