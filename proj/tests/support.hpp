#pragma once

// Test-side generators and oracles. The oracles deliberately avoid the
// library's closed forms: pairings come from multiplying truncated Chern
// characters with the Todd class, linear systems from plain Gaussian
// elimination over mpq_class.

#include <array>
#include <optional>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <gmpxx.h>

#include "p2walls.hpp"

namespace testing_support {

using p2walls::ChernCharacter;
using p2walls::Integer;
using p2walls::Rational;

constexpr std::uint64_t kSeed = 0x5eed2024ULL;

class Gen {
 public:
  explicit Gen(std::uint64_t seed = kSeed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long num_bound, long den_bound) {
    return Rational(uniform(-num_bound, num_bound), uniform(1, den_bound));
  }

  /// Lattice class with coordinates (r, c, k), d = c/2 + k.
  ChernCharacter lattice(long r_bound = 6, long c_bound = 10, long k_bound = 20) {
    long r = uniform(-r_bound, r_bound);
    long c = uniform(-c_bound, c_bound);
    long k = uniform(-k_bound, k_bound);
    return ChernCharacter::from_coords({Integer(r), Integer(c), Integer(k)});
  }

  ChernCharacter nonzero_lattice(long r_bound = 6, long c_bound = 10, long k_bound = 20) {
    while (true) {
      auto v = lattice(r_bound, c_bound, k_bound);
      if (!v.is_zero()) return v;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Truncated polynomial a0 + a1 H + a2 H^2 on P^2.
using Poly = std::array<mpq_class, 3>;

inline Poly poly(const ChernCharacter& v) {
  return {mpq_class(v.r()), mpq_class(v.c()), v.d().raw()};
}

inline Poly mul(const Poly& a, const Poly& b) {
  return {a[0] * b[0], a[0] * b[1] + a[1] * b[0], a[0] * b[2] + a[1] * b[1] + a[2] * b[0]};
}

/// Hirzebruch-Riemann-Roch: chi = degree-2 part of ch(u) ch(v) td(P^2),
/// td = 1 + 3/2 H + H^2.
inline mpq_class hrr_tensor(const ChernCharacter& u, const ChernCharacter& v) {
  Poly td{mpq_class(1), mpq_class(3, 2), mpq_class(1)};
  return mul(mul(poly(u), poly(v)), td)[2];
}

inline mpq_class hrr_hom(const ChernCharacter& u, const ChernCharacter& v) {
  Poly du = poly(u);
  du[1] = -du[1];
  Poly td{mpq_class(1), mpq_class(3, 2), mpq_class(1)};
  return mul(mul(du, poly(v)), td)[2];
}

inline bool equal(const Rational& a, const mpq_class& b) { return a.raw() == b; }

/// Solves a 3x3 system M x = b by Gaussian elimination; empty if singular.
inline std::optional<std::array<mpq_class, 3>> gauss3(std::array<std::array<mpq_class, 3>, 3> m,
                                                      std::array<mpq_class, 3> b) {
  for (int col = 0; col < 3; ++col) {
    int piv = -1;
    for (int i = col; i < 3; ++i) {
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return std::nullopt;
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    for (int i = 0; i < 3; ++i) {
      if (i == col || m[i][col] == 0) continue;
      mpq_class f = m[i][col] / m[col][col];
      for (int j = 0; j < 3; ++j) m[i][j] -= f * m[col][j];
      b[i] -= f * b[col];
    }
  }
  return std::array<mpq_class, 3>{b[0] / m[0][0], b[1] / m[1][1], b[2] / m[2][2]};
}

/// mu_{s,t} evaluated with an exact rational t (t^2 a perfect square).
inline mpq_class slope_at(const ChernCharacter& v, const mpq_class& s, const mpq_class& t) {
  mpq_class r(v.r()), c(v.c());
  mpq_class d = v.d().raw();
  mpq_class re = -(d - s * c + r * (s * s - t * t) / 2);
  mpq_class im = t * (c - r * s);
  return -re / im;
}

/// Runs a shell command and returns (exit status, stdout).
inline std::pair<int, std::string> run(const std::string& cmd) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, out};
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

inline std::string cli(const std::string& args) {
#ifdef P2WALLS_CLI
  return std::string("'") + P2WALLS_CLI + "' " + args;
#else
  return "p2walls " + args;
#endif
}

/// A random point on a semicircle: s = center + u with u^2 < R^2.
inline std::optional<p2walls::StabilityPoint> point_on(const p2walls::Wall& w, Gen& g) {
  if (!w.is_semicircle()) return std::nullopt;
  const auto& sc = w.semicircle();
  for (int attempt = 0; attempt < 8; ++attempt) {
    Rational u = g.rational(40, 12);
    Rational t_sq = sc.radius_sq - u * u;
    if (t_sq.sign() > 0) return p2walls::StabilityPoint{sc.center + u, t_sq};
  }
  return std::nullopt;
}

}  // namespace testing_support
