#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "p2walls/chern.hpp"
#include "p2walls/detbundle.hpp"
#include "p2walls/error.hpp"
#include "p2walls/quiver.hpp"
#include "p2walls/rational.hpp"
#include "p2walls/stability.hpp"

namespace p2walls {

/// Unset optionals are derived from v; see default_s_ray / default_t_max_sq.
struct EnumerationOptions {
  std::optional<Rational> s_ray;
  long rank_cap = 8;
  Rational radius_min_sq = 0;
  std::optional<Rational> t_max_sq;
  bool filter_discriminant = true;
  bool filter_slope_window = true;
  unsigned workers = 1;  // 0: one per hardware thread
};

struct ResolvedOptions {
  Rational s_ray;
  long rank_cap;
  Rational radius_min_sq;
  Rational t_max_sq;
  bool filter_discriminant;
  bool filter_slope_window;
  unsigned workers;
};

namespace detail {

inline Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

// Positive rank: largest integer n with c - r n >= sqrt(max(Delta, 0)).
inline Rational positive_rank_s_ray(const ChernCharacter& v) {
  const Integer& r = v.r();
  const Integer& c = v.c();
  Integer delta = discriminant(v).to_integer();
  auto ok = [&](const Integer& n) {
    Integer b = c - r * n;
    return b >= 0 && Integer(b * b) >= delta;
  };
  Integer n = Rational(c, r).floor();
  if (delta > 0) n = std::min(n, Integer(Rational(Integer(c - isqrt(delta)), r).floor() + 1));
  while (!ok(n)) n -= 1;
  if (r * n == c) n -= 1;
  return Rational(n);
}

}  // namespace detail

inline void check_region(const ChernCharacter& v, const Rational& s) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroClass, "cannot enumerate walls of the zero class");
  if (v.r() == 0) {
    if (v.c() <= 0) throw Error(ErrorKind::RegionViolation, "rank-zero class needs c > 0, got " + v.str());
    return;
  }
  Rational slope(v.c(), v.r());
  if (v.r() > 0 && s >= slope) {
    throw Error(ErrorKind::RegionViolation, "s_ray " + s.str() + " must be < c/r = " + slope.str());
  }
  if (v.r() < 0 && s <= slope) {
    throw Error(ErrorKind::RegionViolation, "s_ray " + s.str() + " must be > c/r = " + slope.str());
  }
}

/// Rank zero: the common centre d/c. Positive rank: the largest integer
/// left of c/r - sqrt(Delta)/r (falls back to c/r - 1). Negative rank is the
/// mirror image through s -> -s.
inline Rational default_s_ray(const ChernCharacter& v) {
  if (v.is_zero()) throw Error(ErrorKind::ZeroClass, "no default ray for the zero class");
  if (v.r() == 0) {
    if (v.c() <= 0) throw Error(ErrorKind::RegionViolation, "rank-zero class needs c > 0, got " + v.str());
    return v.d() / Rational(v.c());
  }
  if (v.r() > 0) return detail::positive_rank_s_ray(v);
  return -detail::positive_rank_s_ray(dual(-v));
}

/// Rank zero: (c/2)^2, the largest radius allowed with r' = 1.
/// Otherwise (Delta M / 2|r|)^2 with M = max(rank_cap, |r|); 1 when Delta <= 0.
inline Rational default_t_max_sq(const ChernCharacter& v, long rank_cap) {
  if (v.r() == 0) return square(Rational(v.c()) / Rational(2));
  Integer a = abs(v.r());
  Integer m = std::max(Integer(rank_cap), a);
  Rational delta = discriminant(v);
  if (delta.sign() <= 0) return Rational(1);
  return square(delta * Rational(m) / Rational(Integer(2 * a)));
}

inline ResolvedOptions resolve_options(const ChernCharacter& v, const EnumerationOptions& opts) {
  if (opts.rank_cap < 1) throw Error(ErrorKind::BadOptions, "rank_cap must be >= 1");
  if (opts.radius_min_sq.sign() < 0) throw Error(ErrorKind::BadOptions, "radius_min_sq must be >= 0");
  if (opts.t_max_sq && opts.t_max_sq->sign() <= 0) throw Error(ErrorKind::BadOptions, "t_max_sq must be > 0");
  Rational s = opts.s_ray ? *opts.s_ray : default_s_ray(v);
  check_region(v, s);
  Rational t_max = opts.t_max_sq ? *opts.t_max_sq : default_t_max_sq(v, opts.rank_cap);
  unsigned workers = opts.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  return {s, opts.rank_cap, opts.radius_min_sq, t_max, opts.filter_discriminant, opts.filter_slope_window, workers};
}

struct Destabilizer {
  ChernCharacter sub;
  ChernCharacter quotient;
  friend bool operator==(const Destabilizer&, const Destabilizer&) = default;
};

enum class Hint { CollapsingCandidate, FiberContractionCandidate, DivisorialCandidate, FlipCandidate };

constexpr std::string_view to_string(Hint h) {
  switch (h) {
    case Hint::CollapsingCandidate: return "CollapsingCandidate";
    case Hint::FiberContractionCandidate: return "FiberContractionCandidate";
    case Hint::DivisorialCandidate: return "DivisorialCandidate";
    case Hint::FlipCandidate: return "FlipCandidate";
  }
  return "Unknown";
}

/// Numbers for one decomposition v = sub + quotient. Above the wall the
/// quotient-by-sub extensions live in Ext^1(quotient, sub); after crossing
/// the reversed ones live in Ext^1(sub, quotient).
struct DestabilizerReport {
  ChernCharacter sub;
  ChernCharacter quotient;
  Rational chi_hom_sub_quotient;
  Rational chi_hom_quotient_sub;
  Integer ext1_sub_quotient;
  Integer ext1_quotient_sub;
  Rational lemma51;  // chi_hom(sub, quot) - chi_hom(quot, sub)
  Integer gdim_sub;
  Integer gdim_quotient;
  Integer reversed_ext;  // ext1_generic of the primitive pieces, sub -> quotient
  Integer locus_estimate;
};

struct WallReport {
  Integer gdim_v;
  std::vector<DestabilizerReport> entries;
  Integer max_locus_estimate;
  std::vector<Hint> hints;  // priority order
  Hint primary = Hint::FlipCandidate;

  bool has(Hint h) const { return std::find(hints.begin(), hints.end(), h) != hints.end(); }
};

struct WallRecord {
  Wall wall;
  std::vector<Destabilizer> destabilizers;  // sorted by (r', c', d')
  Rational crossing_t_sq;                   // where the ray meets the wall
  std::optional<WallReport> report;
};

struct WallEnumeration {
  ChernCharacter v;
  ResolvedOptions options;
  std::vector<WallRecord> walls;     // descending radius_sq
  std::vector<WallRecord> vertical;  // vertical lines through the ray
};

namespace detail {

struct Candidate {
  Rational center;
  Rational radius_sq;
  ChernCharacter sub;
};

struct VerticalCandidate {
  Rational s;
  ChernCharacter sub;
};

struct Stratum {
  std::vector<Candidate> walls;
  std::vector<VerticalCandidate> vertical;
};

inline bool discriminants_ok(const ChernCharacter& v, const ChernCharacter& sub) {
  return discriminant(sub).sign() >= 0 && discriminant(v - sub).sign() >= 0;
}

// Rank-zero v with both halves of the slope window: every wall is centred at
// x0 = d/c and R^2 = x0^2 + 2d'/r' - 2c'x0/r', so d' is affine in R^2.
inline void rank_zero_stratum(const ChernCharacter& v, const ResolvedOptions& o, long rp, Stratum& out) {
  Rational r_sub(rp);
  Rational c(v.c());
  Rational x0 = v.d() / c;
  Rational ray_gap = square(o.s_ray - x0);
  Rational r2_lo = std::max(o.radius_min_sq, ray_gap);
  Integer cp_lo = (r_sub * x0).floor() + 1;
  Integer cp_hi = (r_sub * x0 + c).ceil() - 1;
  for (Integer cp = cp_lo; cp <= cp_hi; ++cp) {
    Rational delta = Rational(cp) / r_sub - x0;
    Rational rest = c / r_sub - delta;
    if (delta.sign() <= 0 || rest.sign() <= 0) continue;
    Rational r2_hi = std::min(square(std::min(delta, rest)), o.t_max_sq + ray_gap);
    if (r2_hi <= r2_lo) continue;
    auto d_of = [&](const Rational& r2) { return Rational(cp) * x0 + r_sub * (r2 - square(x0)) / Rational(2); };
    Integer k_lo = (d_of(r2_lo) * Rational(2)).floor() + 1;
    Integer k_hi = (d_of(r2_hi) * Rational(2)).floor();
    if (mpz_odd_p(Integer(k_lo - cp).get_mpz_t())) ++k_lo;
    for (Integer k = k_lo; k <= k_hi; k += 2) {
      ChernCharacter sub(Integer(rp), cp, Rational(k, Integer(2)));
      if (o.filter_discriminant && !discriminants_ok(v, sub)) continue;
      Wall w = wall_through(v, sub);
      const auto& sc = w.semicircle();
      out.walls.push_back({sc.center, sc.radius_sq, sub});
    }
  }
}

// Any v with B_v > 0 on the ray. For fixed (r', c') the wall equation is
// affine in d' with t^2 as parameter:
//   2 B_v d' = -(s^2 + t^2) p - 2 s r' d + 2 c' d.
inline void general_stratum(const ChernCharacter& v, const ResolvedOptions& o, long rp, Stratum& out) {
  const Rational& s = o.s_ray;
  Rational r(v.r()), c(v.c());
  Rational r_sub(rp);
  Rational b_v = c - r * s;
  Integer cp_lo = (r_sub * s).ceil();
  Integer cp_hi = (c - (r - r_sub) * s).floor();
  Rational rho = r - r_sub;
  for (Integer cp = cp_lo; cp <= cp_hi; ++cp) {
    Rational c_sub(cp);
    Rational p = r * c_sub - r_sub * c;
    if (p.is_zero()) {
      Rational d_sub = v.d() * (c_sub - s * r_sub) / b_v;
      if (!ChernCharacter::in_lattice(Integer(rp), cp, d_sub)) continue;
      ChernCharacter sub(Integer(rp), cp, d_sub);
      if (o.filter_discriminant && !discriminants_ok(v, sub)) continue;
      auto [pp, q, m] = wall_coefficients(v, sub);
      if (q.is_zero()) continue;
      out.vertical.push_back({m / q, sub});
      continue;
    }
    auto d_of = [&](const Rational& t_sq) {
      return (-(square(s) + t_sq) * p - Rational(2) * s * r_sub * v.d() + Rational(2) * c_sub * v.d()) /
             (Rational(2) * b_v);
    };
    Rational lo = d_of(Rational(0));
    Rational hi = d_of(o.t_max_sq);
    if (hi < lo) std::swap(lo, hi);
    if (o.filter_discriminant) {
      if (r_sub.sign() > 0) hi = std::min(hi, square(c_sub) / (Rational(2) * r_sub));
      // Delta(v - v') >= 0 bounds d' from one side depending on the sign of r - r'.
      if (!rho.is_zero()) {
        Rational bound = v.d() - square(c - c_sub) / (Rational(2) * rho);
        if (rho.sign() > 0) lo = std::max(lo, bound);
        if (rho.sign() < 0) hi = std::min(hi, bound);
      }
    }
    if (hi < lo) continue;
    Integer k_lo = (lo * Rational(2)).ceil();
    Integer k_hi = (hi * Rational(2)).floor();
    if (mpz_odd_p(Integer(k_lo - cp).get_mpz_t())) ++k_lo;
    for (Integer k = k_lo; k <= k_hi; k += 2) {
      ChernCharacter sub(Integer(rp), cp, Rational(k, Integer(2)));
      auto [pp, q, m] = wall_coefficients(v, sub);
      Rational center = q / pp;
      Rational radius_sq = square(center) - Rational(2) * m / pp;
      if (radius_sq.sign() <= 0 || radius_sq <= o.radius_min_sq) continue;
      Rational t_sq = radius_sq - square(s - center);
      if (t_sq.sign() <= 0 || t_sq > o.t_max_sq) continue;
      if (o.filter_discriminant && !discriminants_ok(v, sub)) continue;
      if (o.filter_slope_window && rp > 0) {
        Rational gap = c_sub / r_sub - center;
        if (gap.sign() < 0 || square(gap) < radius_sq) continue;
      }
      out.walls.push_back({center, radius_sq, sub});
    }
  }
}

inline std::vector<Destabilizer> sorted_destabilizers(const ChernCharacter& v, std::vector<ChernCharacter> subs) {
  std::sort(subs.begin(), subs.end());
  subs.erase(std::unique(subs.begin(), subs.end()), subs.end());
  std::vector<Destabilizer> out;
  out.reserve(subs.size());
  for (auto& sub : subs) out.push_back({sub, v - sub});
  return out;
}

}  // namespace detail

/// Candidate walls of v crossed by the ray s = s_ray, strata r' run in
/// parallel and merged through a canonical sort.
inline WallEnumeration enumerate(const ChernCharacter& v, const EnumerationOptions& opts) {
  ResolvedOptions o = resolve_options(v, opts);
  bool fast = v.r() == 0 && o.filter_slope_window;
  long first = fast ? 1 : 0;
  std::size_t count = static_cast<std::size_t>(o.rank_cap - first + 1);
  std::vector<detail::Stratum> strata(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        long rp = first + static_cast<long>(i);
        if (fast) {
          detail::rank_zero_stratum(v, o, rp, strata[i]);
        } else {
          detail::general_stratum(v, o, rp, strata[i]);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = std::min<unsigned>(o.workers, static_cast<unsigned>(count));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::map<std::pair<Rational, Rational>, std::vector<ChernCharacter>> grouped;
  std::map<Rational, std::vector<ChernCharacter>> lines;
  for (auto& st : strata) {
    for (auto& cand : st.walls) grouped[{cand.radius_sq, cand.center}].push_back(cand.sub);
    for (auto& cand : st.vertical) lines[cand.s].push_back(cand.sub);
  }

  WallEnumeration out{v, o, {}, {}};
  for (auto& [key, subs] : grouped) {
    auto destabs = detail::sorted_destabilizers(v, subs);
    Wall wall{Semicircle{key.second, key.first}, {v, destabs.front().sub}};
    Rational t_sq = key.first - square(o.s_ray - key.second);
    out.walls.push_back({wall, std::move(destabs), t_sq, std::nullopt});
  }
  // Descending radius_sq, ties by ascending centre.
  std::stable_sort(out.walls.begin(), out.walls.end(), [](const WallRecord& a, const WallRecord& b) {
    const auto& x = a.wall.semicircle();
    const auto& y = b.wall.semicircle();
    if (x.radius_sq != y.radius_sq) return x.radius_sq > y.radius_sq;
    return x.center < y.center;
  });
  for (auto& [s, subs] : lines) {
    if (s != o.s_ray) continue;
    auto destabs = detail::sorted_destabilizers(v, subs);
    Wall wall{VerticalLine{s}, {v, destabs.front().sub}};
    out.vertical.push_back({wall, std::move(destabs), Rational(0), std::nullopt});
  }
  return out;
}

inline std::vector<WallRecord> enumerate_walls(const ChernCharacter& v, const EnumerationOptions& opts) {
  return enumerate(v, opts).walls;
}

/// Numeric dossier of a wall. Hints assume generic vanishing of Hom and
/// Ext^2 between the factors and are candidates only.
inline WallReport wall_report(const ChernCharacter& v, const WallRecord& rec) {
  WallReport rep;
  rep.gdim_v = gieseker_dimension(v);
  bool collapsing = !rec.destabilizers.empty();
  bool have_estimate = false;
  for (const auto& ds : rec.destabilizers) {
    DestabilizerReport e;
    e.sub = ds.sub;
    e.quotient = ds.quotient;
    e.chi_hom_sub_quotient = euler_form_hom(ds.sub, ds.quotient);
    e.chi_hom_quotient_sub = euler_form_hom(ds.quotient, ds.sub);
    e.ext1_sub_quotient = ext1_generic(ds.sub, ds.quotient);
    e.ext1_quotient_sub = ext1_generic(ds.quotient, ds.sub);
    e.lemma51 = lemma51_pairing(ds.sub, ds.quotient);
    e.gdim_sub = gieseker_dimension(ds.sub);
    e.gdim_quotient = gieseker_dimension(ds.quotient);
    e.reversed_ext = ext1_generic(primitive_part(ds.sub), primitive_part(ds.quotient));
    e.locus_estimate = e.gdim_sub + e.gdim_quotient + e.ext1_quotient_sub - 1;
    if (e.reversed_ext > 0) collapsing = false;
    if (!have_estimate || e.locus_estimate > rep.max_locus_estimate) rep.max_locus_estimate = e.locus_estimate;
    have_estimate = true;
    rep.entries.push_back(std::move(e));
  }
  if (collapsing) rep.hints.push_back(Hint::CollapsingCandidate);
  if (have_estimate) {
    if (rep.max_locus_estimate >= rep.gdim_v) {
      rep.hints.push_back(Hint::FiberContractionCandidate);
    } else if (rep.max_locus_estimate == rep.gdim_v - 1) {
      rep.hints.push_back(Hint::DivisorialCandidate);
    } else {
      rep.hints.push_back(Hint::FlipCandidate);
    }
  }
  if (!rep.hints.empty()) rep.primary = rep.hints.front();
  return rep;
}

struct QuiverAnnotation {
  HeartIndex suggested;
  std::optional<QuiverDatum> datum;
  std::vector<std::string> diagnostics;  // one line per rejected k
};

struct PicardAnnotation {
  PicSample above;
  PicSample below;
};

struct WalkStep {
  WallRecord record;
  WallReport report;
  StabilityPoint point;
  QuiverAnnotation quiver;
  std::optional<PicardAnnotation> picard;
  std::vector<std::string> diagnostics;
};

struct MmpWalk {
  ChernCharacter v;
  ResolvedOptions options;
  PerpBasis basis;
  std::vector<WalkStep> steps;
  bool reached_collapsing = false;
};

/// Tries suggest_heart(s), then k+1, k-1, k+2, ... up to distance 3.
inline QuiverAnnotation annotate_quiver(const ChernCharacter& v, const Wall& wall, const StabilityPoint& pt) {
  QuiverAnnotation out{suggest_heart(pt.s), std::nullopt, {}};
  for (long step = 0; step <= 6; ++step) {
    long offset = (step + 1) / 2 * (step % 2 == 1 ? 1 : -1);
    HeartIndex k{out.suggested.k + offset};
    try {
      out.datum = polarization(v, wall, pt, k);
      return out;
    } catch (const Error& e) {
      out.diagnostics.push_back("k=" + k.k.get_str() + ": " + e.what());
    }
  }
  return out;
}

/// Walls in the order they are met as t decreases along the ray, stopping
/// after the first collapsing candidate.
inline MmpWalk mmp_walk(const ChernCharacter& v, const EnumerationOptions& opts) {
  auto en = enumerate(v, opts);
  MmpWalk walk{v, en.options, perp_basis(v), {}, false};
  const auto& walls = en.walls;
  for (std::size_t i = 0; i < walls.size(); ++i) {
    WalkStep step{walls[i], wall_report(v, walls[i]), StabilityPoint{en.options.s_ray, walls[i].crossing_t_sq}, {}, {}, {}};
    step.record.report = step.report;
    step.quiver = annotate_quiver(v, step.record.wall, step.point);
    const Rational& t = walls[i].crossing_t_sq;
    Rational above = i == 0 ? t * Rational(2) : (t + walls[i - 1].crossing_t_sq) / Rational(2);
    Rational below = i + 1 == walls.size() ? t / Rational(2) : (t + walls[i + 1].crossing_t_sq) / Rational(2);
    try {
      auto samples = picard_path(v, en.options.s_ray, {above, below});
      step.picard = PicardAnnotation{samples[0], samples[1]};
    } catch (const Error& e) {
      step.diagnostics.push_back(std::string("picard: ") + e.what());
    }
    bool collapsing = step.report.has(Hint::CollapsingCandidate);
    walk.steps.push_back(std::move(step));
    if (collapsing) {
      walk.reached_collapsing = true;
      break;
    }
  }
  return walk;
}

}  // namespace p2walls
