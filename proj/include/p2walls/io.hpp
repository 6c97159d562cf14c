#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "p2walls/chern.hpp"
#include "p2walls/detbundle.hpp"
#include "p2walls/quiver.hpp"
#include "p2walls/stability.hpp"
#include "p2walls/walls.hpp"

namespace p2walls::io {

// nlohmann::json keeps object keys in a std::map, so dumps are key-sorted
// and byte-stable. Every number goes out as an exact string.
using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return q.str(); }
inline Json to_json(const Integer& n) { return n.get_str(); }
inline Json to_json(const ChernCharacter& v) { return Json::array({v.r().get_str(), v.c().get_str(), v.d().str()}); }
inline Json to_json(const Triple& t) { return Json::array({t[0].get_str(), t[1].get_str(), t[2].get_str()}); }

inline Json to_json(const Wall& w) {
  Json out;
  if (w.is_semicircle()) {
    out["kind"] = "semicircle";
    out["center"] = to_json(w.semicircle().center);
    out["radius_sq"] = to_json(w.semicircle().radius_sq);
  } else {
    out["kind"] = "vline";
    out["s"] = to_json(w.vertical().s);
  }
  out["generators"] = Json::array({to_json(w.generators.first), to_json(w.generators.second)});
  return out;
}

inline Json to_json(const WallReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({{"sub", to_json(e.sub)},
                       {"quotient", to_json(e.quotient)},
                       {"chi_hom_sub_quotient", to_json(e.chi_hom_sub_quotient)},
                       {"chi_hom_quotient_sub", to_json(e.chi_hom_quotient_sub)},
                       {"ext1_sub_quotient", to_json(e.ext1_sub_quotient)},
                       {"ext1_quotient_sub", to_json(e.ext1_quotient_sub)},
                       {"lemma51_pairing", to_json(e.lemma51)},
                       {"gieseker_dimension_sub", to_json(e.gdim_sub)},
                       {"gieseker_dimension_quotient", to_json(e.gdim_quotient)},
                       {"reversed_ext", to_json(e.reversed_ext)},
                       {"locus_estimate", to_json(e.locus_estimate)}});
  }
  Json hints = Json::array();
  for (auto h : rep.hints) hints.push_back(std::string(to_string(h)));
  return {{"gieseker_dimension", to_json(rep.gdim_v)},
          {"max_locus_estimate", to_json(rep.max_locus_estimate)},
          {"hints", hints},
          {"primary_hint", std::string(to_string(rep.primary))},
          {"entries", entries}};
}

inline Json to_json(const WallRecord& rec) {
  Json destabs = Json::array();
  for (const auto& d : rec.destabilizers) destabs.push_back({{"sub", to_json(d.sub)}, {"quotient", to_json(d.quotient)}});
  Json out{{"wall", to_json(rec.wall)}, {"destabilizers", destabs}, {"crossing_t_sq", to_json(rec.crossing_t_sq)}};
  if (rec.report) out["report"] = to_json(*rec.report);
  return out;
}

inline Json to_json(const ResolvedOptions& o) {
  return {{"s_ray", to_json(o.s_ray)},
          {"rank_cap", std::to_string(o.rank_cap)},
          {"radius_min_sq", to_json(o.radius_min_sq)},
          {"t_max_sq", to_json(o.t_max_sq)},
          {"filter_discriminant", o.filter_discriminant},
          {"filter_slope_window", o.filter_slope_window}};
}

inline Json to_json(const WallEnumeration& en) {
  Json walls = Json::array();
  for (const auto& w : en.walls) walls.push_back(to_json(w));
  Json vertical = Json::array();
  for (const auto& w : en.vertical) vertical.push_back(to_json(w));
  return {{"input", to_json(en.v)},
          {"s_ray", to_json(en.options.s_ray)},
          {"options", to_json(en.options)},
          {"walls", walls},
          {"vertical", vertical}};
}

inline Json to_json(const QuiverDatum& q) {
  return {{"k", to_json(q.k.k)},
          {"sign", std::to_string(q.dimvec.sign)},
          {"n", to_json(q.dimvec.n)},
          {"a", to_json(q.polarization.a)},
          {"w", to_json(q.w.w)},
          {"test_class", to_json(q.w.test_class)},
          {"test_pairing", to_json(q.w.test_pairing)},
          {"test_phase_determinant", to_json(q.w.test_phase_determinant)}};
}

inline Json to_json(const PicSample& p) {
  return {{"t_sq", to_json(p.t_sq)}, {"x1", to_json(p.coord.x1)}, {"x2", to_json(p.coord.x2)}, {"w", to_json(p.w)}};
}

inline Json to_json(const PerpBasis& b) { return Json::array({to_json(b.e1), to_json(b.e2)}); }

inline Json to_json(const MmpWalk& walk) {
  Json steps = Json::array();
  for (const auto& st : walk.steps) {
    Json q{{"suggested_k", to_json(st.quiver.suggested.k)}, {"diagnostics", st.quiver.diagnostics}};
    q["datum"] = st.quiver.datum ? to_json(*st.quiver.datum) : Json(nullptr);
    Json step = to_json(st.record);
    step["point"] = {{"s", to_json(st.point.s)}, {"t_sq", to_json(st.point.t_sq)}};
    step["quiver"] = q;
    if (st.picard) {
      step["picard"] = {{"above", to_json(st.picard->above)}, {"below", to_json(st.picard->below)}};
    } else {
      step["picard"] = nullptr;
    }
    step["diagnostics"] = st.diagnostics;
    steps.push_back(step);
  }
  return {{"input", to_json(walk.v)},
          {"s_ray", to_json(walk.options.s_ray)},
          {"options", to_json(walk.options)},
          {"perp_basis", to_json(walk.basis)},
          {"steps", steps},
          {"reached_collapsing", walk.reached_collapsing}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- text

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

/// Exact square root of q when q is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q.sign() < 0 || !is_square(q.num()) || !is_square(q.den())) return std::nullopt;
  return Rational(detail::isqrt(q.num()), detail::isqrt(q.den()));
}

inline std::string decimal6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline std::string paren(const ChernCharacter& v) { return "(" + v.str() + ")"; }

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

/// Fixed-width table; the last column is never padded.
inline std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += (i + 1 == row.size()) ? row[i] : pad(row[i], width[i] + 2);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + "\n";
  }
  return out;
}

inline std::vector<std::string> radius_cells(const Rational& radius_sq) {
  auto root = exact_sqrt(radius_sq);
  return {radius_sq.str(), root ? root->str() : "-", decimal6(std::sqrt(radius_sq.to_double()))};
}

inline std::string text_walls(const WallEnumeration& en, bool with_hints) {
  std::ostringstream out;
  out << "v = " << paren(en.v) << "  s_ray = " << en.options.s_ray.str() << "  t_max_sq = " << en.options.t_max_sq.str()
      << "  walls: " << en.walls.size() << "\n";
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head{"Wall", "center", "radius_sq", "R", "R~"};
  if (with_hints) head.push_back("hint");
  head.push_back("Destabilizing invariants");
  rows.push_back(head);
  for (std::size_t i = 0; i < en.walls.size(); ++i) {
    const auto& rec = en.walls[i];
    std::vector<std::string> row{"W" + std::to_string(i), rec.wall.semicircle().center.str()};
    for (auto& cell : radius_cells(rec.wall.semicircle().radius_sq)) row.push_back(cell);
    if (with_hints) row.push_back(rec.report ? std::string(to_string(rec.report->primary)) : "-");
    std::string subs;
    for (const auto& d : rec.destabilizers) subs += (subs.empty() ? "" : " ") + paren(d.sub);
    row.push_back(subs);
    rows.push_back(row);
  }
  out << table(rows);
  for (const auto& rec : en.vertical) {
    out << "vertical wall at s = " << rec.wall.vertical().s.str() << ":";
    for (const auto& d : rec.destabilizers) out << " " << paren(d.sub);
    out << "\n";
  }
  return out.str();
}

inline std::string text_report(const WallReport& rep) {
  std::ostringstream out;
  out << "  gieseker_dimension(v) = " << rep.gdim_v.get_str() << "  max locus estimate = " << rep.max_locus_estimate.get_str()
      << "  hints:";
  for (auto h : rep.hints) out << " " << to_string(h);
  out << "\n";
  std::vector<std::vector<std::string>> rows{{"  sub", "quotient", "chi(S,Q)", "chi(Q,S)", "ext1(S,Q)", "ext1(Q,S)",
                                              "lemma51", "gdim S", "gdim Q", "reversed", "estimate"}};
  for (const auto& e : rep.entries) {
    rows.push_back({"  " + paren(e.sub), paren(e.quotient), e.chi_hom_sub_quotient.str(), e.chi_hom_quotient_sub.str(),
                    e.ext1_sub_quotient.get_str(), e.ext1_quotient_sub.get_str(), e.lemma51.str(), e.gdim_sub.get_str(),
                    e.gdim_quotient.get_str(), e.reversed_ext.get_str(), e.locus_estimate.get_str()});
  }
  out << table(rows);
  return out.str();
}

inline std::string text_quiver(const QuiverDatum& q) {
  std::ostringstream out;
  out << "k = " << q.k.k.get_str() << "  sign = " << (q.dimvec.sign > 0 ? "+" : "-") << "  n = (" << to_string(q.dimvec.n)
      << ")  a = (" << to_string(q.polarization.a) << ")  w = " << paren(q.w.w) << "\n";
  out << "  orientation: chi(w, " << paren(q.w.test_class) << ") = " << q.w.test_pairing.str()
      << ", D(x*, v) = " << q.w.test_phase_determinant.str() << "\n";
  return out.str();
}

inline std::string text_walk(const MmpWalk& walk) {
  std::ostringstream out;
  out << "v = " << paren(walk.v) << "  s_ray = " << walk.options.s_ray.str() << "  gieseker_dimension = "
      << gieseker_dimension(walk.v).get_str() << "\n";
  out << "perp basis: e1 = " << paren(walk.basis.e1) << ", e2 = " << paren(walk.basis.e2) << "\n";
  for (std::size_t i = 0; i < walk.steps.size(); ++i) {
    const auto& st = walk.steps[i];
    const auto& sc = st.record.wall.semicircle();
    auto cells = radius_cells(sc.radius_sq);
    out << "W" << i << "  center " << sc.center.str() << "  radius_sq " << cells[0] << "  R " << cells[1] << " (~"
        << cells[2] << ")  crossing t^2 = " << st.point.t_sq.str() << "  -> " << to_string(st.report.primary) << "\n";
    out << text_report(st.report);
    if (st.quiver.datum) {
      out << "  quiver (suggested k = " << st.quiver.suggested.k.get_str() << "): " << text_quiver(*st.quiver.datum);
    } else {
      out << "  quiver: no feasible heart near k = " << st.quiver.suggested.k.get_str() << "\n";
    }
    if (st.picard) {
      out << "  picard: above t^2=" << st.picard->above.t_sq.str() << " (" << st.picard->above.coord.x1.str() << ", "
          << st.picard->above.coord.x2.str() << ")  below t^2=" << st.picard->below.t_sq.str() << " ("
          << st.picard->below.coord.x1.str() << ", " << st.picard->below.coord.x2.str() << ")\n";
    }
    for (const auto& d : st.diagnostics) out << "  note: " << d << "\n";
  }
  out << (walk.reached_collapsing ? "walk ends at a collapsing candidate\n" : "walk ends without a collapsing candidate\n");
  return out.str();
}

// ---------------------------------------------------------------- csv

inline std::string csv_walls(const WallEnumeration& en) {
  std::string out = "r',c',d',center,radius_sq,hint\n";
  for (const auto& rec : en.walls) {
    WallReport rep = rec.report ? *rec.report : wall_report(en.v, rec);
    for (const auto& d : rec.destabilizers) {
      out += d.sub.r().get_str() + "," + d.sub.c().get_str() + "," + d.sub.d().str() + "," +
             rec.wall.semicircle().center.str() + "," + rec.wall.semicircle().radius_sq.str() + "," +
             std::string(to_string(rep.primary)) + "\n";
    }
  }
  return out;
}

inline std::string csv_picard(const std::vector<PicSample>& samples) {
  std::string out = "t_sq,x1,x2\n";
  for (const auto& p : samples) out += p.t_sq.str() + "," + p.coord.x1.str() + "," + p.coord.x2.str() + "\n";
  return out;
}

// ---------------------------------------------------------------- svg

struct SvgOptions {
  Rational scale = 60;                           // pixels per unit
  std::optional<std::pair<Rational, Rational>> s_range;
};

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

/// s to the right, t up. Floating point is used for pixel positions only.
inline std::string svg_walls(const WallEnumeration& en, const SvgOptions& so = {}) {
  double scale = so.scale.to_double();
  double s_ray = en.options.s_ray.to_double();
  double lo = s_ray - 1, hi = s_ray + 1, top = 1;
  for (const auto& rec : en.walls) {
    double c = rec.wall.semicircle().center.to_double();
    double r = std::sqrt(rec.wall.semicircle().radius_sq.to_double());
    lo = std::min(lo, c - r);
    hi = std::max(hi, c + r);
    top = std::max(top, r);
  }
  if (so.s_range) {
    lo = so.s_range->first.to_double();
    hi = so.s_range->second.to_double();
  } else {
    lo -= 0.5;
    hi += 0.5;
  }
  top *= 1.15;
  double width = (hi - lo) * scale, height = top * scale + 20;
  auto px = [&](double s) { return fmt((s - lo) * scale); };
  auto py = [&](double t) { return fmt((top - t) * scale); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << fmt(width) << " " << fmt(height)
      << "\" width=\"" << fmt(width) << "\" height=\"" << fmt(height) << "\">\n";
  out << "<!-- v = (" << en.v.str() << "), s_ray = " << en.options.s_ray.str() << " -->\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << fmt(width) << "\" height=\"" << fmt(height) << "\" fill=\"white\"/>\n";
  out << "<line class=\"axis\" x1=\"0\" y1=\"" << py(0) << "\" x2=\"" << fmt(width) << "\" y2=\"" << py(0)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (long k = static_cast<long>(std::ceil(lo)); k <= static_cast<long>(std::floor(hi)); ++k) {
    out << "<line class=\"tick\" x1=\"" << px(k) << "\" y1=\"" << py(0) << "\" x2=\"" << px(k) << "\" y2=\""
        << fmt((top * scale) + 5) << "\" stroke=\"black\"/>";
    out << "<text x=\"" << px(k) << "\" y=\"" << fmt(top * scale + 17) << "\" font-size=\"11\" text-anchor=\"middle\">" << k
        << "</text>\n";
  }
  out << "<line class=\"ray\" x1=\"" << px(s_ray) << "\" y1=\"" << py(0) << "\" x2=\"" << px(s_ray)
      << "\" y2=\"0\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  for (const auto& rec : en.walls) {
    const auto& sc = rec.wall.semicircle();
    double c = sc.center.to_double();
    double r = std::sqrt(sc.radius_sq.to_double());
    out << "<!-- wall center=" << sc.center.str() << " radius_sq=" << sc.radius_sq.str() << " -->\n";
    out << "<path class=\"wall\" d=\"M " << px(c - r) << " " << py(0) << " A " << fmt(r * scale) << " " << fmt(r * scale)
        << " 0 0 1 " << px(c + r) << " " << py(0) << "\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << px(c) << "\" y=\"" << py(r) << "\" dy=\"-3\" font-size=\"11\" text-anchor=\"middle\">R^2="
        << sc.radius_sq.str() << "</text>\n";
  }
  for (const auto& rec : en.vertical) {
    double s = rec.wall.vertical().s.to_double();
    out << "<!-- vertical wall s=" << rec.wall.vertical().s.str() << " -->\n";
    out << "<line class=\"vwall\" x1=\"" << px(s) << "\" y1=\"" << py(0) << "\" x2=\"" << px(s)
        << "\" y2=\"0\" stroke=\"firebrick\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------- config

/// Flat "key = value" file. '#' starts a comment; dashes and underscores in
/// keys are interchangeable.
inline std::map<std::string, std::string> parse_config(std::istream& in, const std::string& origin = "config") {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError, origin + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    if (key.empty()) throw Error(ErrorKind::ParseError, origin + ":" + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

inline std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read config file " + path);
  return parse_config(in, path);
}

inline bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw Error(ErrorKind::ParseError, "not a boolean: '" + text + "'");
}

/// "a,b" -> (a, b) with a < b.
inline std::pair<Rational, Rational> parse_range(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "expected 'lo,hi', got '" + text + "'");
  Rational a = Rational::parse(std::string_view(text).substr(0, comma));
  Rational b = Rational::parse(std::string_view(text).substr(comma + 1));
  if (!(a < b)) throw Error(ErrorKind::BadOptions, "empty range '" + text + "'");
  return {a, b};
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = std::string_view(text).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(Rational::parse(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace p2walls::io
