#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "p2walls/error.hpp"

namespace p2walls {

using Integer = mpz_class;

inline std::string to_string(const Integer& n) { return n.get_str(); }

inline Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty() || s == "-") throw Error(ErrorKind::ParseError, "empty integer '" + std::string(text) + "'");
  for (std::size_t i = (s.front() == '-') ? 1 : 0; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::ParseError, "not an integer: '" + std::string(text) + "'");
  }
  return Integer(s, 10);
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline bool fits_long(const Integer& n) { return n.fits_slong_p(); }

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// A thin value wrapper over `mpq_class`. Keeping the GMP expression templates
/// behind this type means `auto` never captures a lazy expression.
class Rational {
 public:
  Rational() = default;
  Rational(int n) : q_(n) {}
  Rational(long n) : q_(n) {}
  Rational(long long n) : q_(Integer(std::to_string(n))) {}
  Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  // Lazy gmpxx integer expressions such as a * b.
  template <class Expr>
  Rational(const __gmp_expr<mpz_t, Expr>& e) : q_(mpz_class(e)) {}

  /// Accepts "p", "p/q" (q != 0). Surrounding whitespace is ignored.
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(trim(text.substr(0, slash)));
    Integer den = parse_integer(trim(text.substr(slash + 1)));
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }

  /// Exact value as an Integer; throws unless is_integer().
  Integer to_integer() const {
    if (!is_integer()) throw Error(ErrorKind::InvalidArgument, "not an integer: " + str());
    return q_.get_num();
  }

  Integer floor() const {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
  }

  Integer ceil() const {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  double to_double() const { return q_.get_d(); }

  /// "p/q", with "/q" omitted when q = 1.
  std::string str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class q_;
};

inline std::string to_string(const Rational& q) { return q.str(); }

inline Rational square(const Rational& q) { return q * q; }

/// Exact sign of (a + b*sqrt(n)) for n >= 0. Used to compare against
/// quadratic irrationals without materialising the square root.
inline int sign_plus_sqrt(const Rational& a, const Rational& b, const Rational& n) {
  int sa = a.sign();
  int sb = (n.is_zero()) ? 0 : b.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 n.
  auto lhs = square(a);
  auto rhs = square(b) * n;
  if (lhs == rhs) return 0;
  return (lhs > rhs) ? sa : sb;
}

}  // namespace p2walls
