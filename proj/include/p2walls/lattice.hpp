#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "p2walls/error.hpp"
#include "p2walls/rational.hpp"

namespace p2walls::lattice {

using IntVec = std::array<Integer, 3>;
using RatVec = std::array<Rational, 3>;

inline Integer dot(const IntVec& a, const IntVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline RatVec cross(const RatVec& a, const RatVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline bool is_zero(const IntVec& v) { return v[0] == 0 && v[1] == 0 && v[2] == 0; }

/// Scales a rational vector to the primitive integer vector on the same ray.
/// Throws ZeroClass for the zero vector.
inline IntVec primitive_integer_vector(const RatVec& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.den());
  IntVec out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = (v[i] * Rational(den)).to_integer();
  Integer g = gcd(gcd(out[0], out[1]), out[2]);
  if (g == 0) throw Error(ErrorKind::ZeroClass, "zero vector has no primitive representative");
  for (auto& x : out) x /= g;
  return out;
}

/// Row Hermite normal form of an integer matrix with 3 columns. Zero rows are
/// dropped. Pivots are positive, entries above a pivot lie in [0, pivot).
/// The result depends only on the row lattice, so it is a canonical basis.
inline std::vector<IntVec> hermite_rows(std::vector<IntVec> rows) {
  std::size_t top = 0;
  for (std::size_t col = 0; col < 3 && top < rows.size(); ++col) {
    while (true) {
      std::optional<std::size_t> pivot;
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        if (!pivot || abs(rows[i][col]) < abs(rows[*pivot][col])) pivot = i;
      }
      if (!pivot) break;
      std::swap(rows[top], rows[*pivot]);
      bool clean = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (std::size_t k = 0; k < 3; ++k) rows[i][k] -= q * rows[top][k];
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][col].get_mpz_t(), rows[top][col].get_mpz_t());
      for (std::size_t k = 0; k < 3; ++k) rows[i][k] -= q * rows[top][k];
    }
    ++top;
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IntVec& r) { return is_zero(r); }), rows.end());
  return rows;
}

/// Integral basis of the kernel {x in Z^3 : f . x = 0} of a nonzero integer
/// functional, in row Hermite normal form.
///
/// Unimodular column operations reduce f to (g, 0, 0); the last two columns
/// of the accumulated transform span the kernel.
inline std::array<IntVec, 2> integer_kernel(const IntVec& f) {
  if (is_zero(f)) throw Error(ErrorKind::ZeroClass, "zero functional has a rank-3 kernel");
  std::array<IntVec, 3> cols{IntVec{1, 0, 0}, IntVec{0, 1, 0}, IntVec{0, 0, 1}};
  IntVec g = f;
  for (std::size_t j = 1; j < 3; ++j) {
    if (g[j] == 0) continue;
    Integer h, s, t;
    mpz_gcdext(h.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g[0].get_mpz_t(), g[j].get_mpz_t());
    Integer a_h = g[0] / h;
    Integer b_h = g[j] / h;
    IntVec c0, cj;
    for (std::size_t k = 0; k < 3; ++k) {
      c0[k] = s * cols[0][k] + t * cols[j][k];
      cj[k] = -b_h * cols[0][k] + a_h * cols[j][k];
    }
    cols[0] = c0;
    cols[j] = cj;
    g[0] = h;
    g[j] = 0;
  }
  auto basis = hermite_rows({cols[1], cols[2]});
  return {basis.at(0), basis.at(1)};
}

/// Solves x1 e1 + x2 e2 = w over the rationals. Empty when w is not in the
/// rational span.
inline std::optional<std::array<Rational, 2>> solve_in_span(const IntVec& e1, const IntVec& e2, const IntVec& w) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      Integer det = e1[i] * e2[j] - e1[j] * e2[i];
      if (det == 0) continue;
      Rational x1(Integer(w[i] * e2[j] - w[j] * e2[i]), det);
      Rational x2(Integer(e1[i] * w[j] - e1[j] * w[i]), det);
      for (std::size_t k = 0; k < 3; ++k) {
        if (x1 * Rational(e1[k]) + x2 * Rational(e2[k]) != Rational(w[k])) return std::nullopt;
      }
      return std::array<Rational, 2>{x1, x2};
    }
  }
  return std::nullopt;
}

}  // namespace p2walls::lattice
