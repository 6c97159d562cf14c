// p2walls: walls and chambers of Bridgeland stability on P^2 from the command line.
//
// stdout carries data, stderr diagnostics. Exit codes: 0 ok, 2 bad input,
// 3 a mathematical precondition failed (region, degenerate wall, heart).

#include <algorithm>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "p2walls.hpp"

using namespace p2walls;
namespace pio = p2walls::io;

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLattice:
    case ErrorKind::ParseError:
    case ErrorKind::BadOptions:
    case ErrorKind::InvalidArgument:
      return 2;
    default:
      return 3;
  }
}

struct Settings {
  std::string format = "text";
  std::string config;
  std::optional<long> rank_cap;
  std::string radius_min_sq, s_ray, t_max_sq;
  bool no_discriminant = false;
  bool no_window = false;
  std::optional<unsigned> workers;
  std::string svg_scale, svg_s_range;

  // filled by resolve()
  EnumerationOptions opts;
  pio::SvgOptions svg;

  void resolve() {
    std::map<std::string, std::string> file;
    if (!config.empty()) file = pio::load_config(config);
    static const char* known[] = {"format", "rank_cap", "radius_min_sq", "s_ray", "t_max_sq", "filter_discriminant",
                                  "filter_slope_window", "workers", "svg_scale", "svg_s_range"};
    for (const auto& [key, value] : file) {
      if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
        throw Error(ErrorKind::BadOptions, "unknown config key '" + key + "'");
      }
    }
    auto pick = [&](const std::string& flag, const char* key) -> std::optional<std::string> {
      if (!flag.empty()) return flag;
      if (auto it = file.find(key); it != file.end()) return it->second;
      return std::nullopt;
    };
    if (format_from_flag.empty() && file.count("format")) format = file["format"];
    if (format != "text" && format != "json" && format != "csv" && format != "svg") {
      throw Error(ErrorKind::BadOptions, "unknown format '" + format + "'");
    }
    if (rank_cap) {
      opts.rank_cap = *rank_cap;
    } else if (file.count("rank_cap")) {
      Integer cap = parse_integer(file["rank_cap"]);
      if (!cap.fits_slong_p()) throw Error(ErrorKind::BadOptions, "rank_cap out of range");
      opts.rank_cap = cap.get_si();
    }
    if (auto x = pick(radius_min_sq, "radius_min_sq")) opts.radius_min_sq = Rational::parse(*x);
    if (auto x = pick(s_ray, "s_ray")) opts.s_ray = Rational::parse(*x);
    if (auto x = pick(t_max_sq, "t_max_sq")) opts.t_max_sq = Rational::parse(*x);
    opts.filter_discriminant = file.count("filter_discriminant") ? pio::parse_bool(file["filter_discriminant"]) : true;
    opts.filter_slope_window = file.count("filter_slope_window") ? pio::parse_bool(file["filter_slope_window"]) : true;
    if (no_discriminant) opts.filter_discriminant = false;
    if (no_window) opts.filter_slope_window = false;
    if (workers) {
      opts.workers = *workers;
    } else if (file.count("workers")) {
      opts.workers = static_cast<unsigned>(parse_integer(file["workers"]).get_ui());
    }
    if (auto x = pick(svg_scale, "svg_scale")) {
      svg.scale = Rational::parse(*x);
      if (svg.scale.sign() <= 0) throw Error(ErrorKind::BadOptions, "svg scale must be positive");
    }
    if (auto x = pick(svg_s_range, "svg_s_range")) svg.s_range = pio::parse_range(*x);
  }

  std::string format_from_flag;
};

struct WallChoice {
  std::optional<long> index;
  std::string radius_sq;
  std::string with;
  bool given() const { return index || !radius_sq.empty() || !with.empty(); }
};

struct Selected {
  Wall wall;
  StabilityPoint point;
};

Selected select_wall(const ChernCharacter& v, const EnumerationOptions& opts, const WallChoice& choice) {
  if (!choice.with.empty()) {
    Wall w = wall_through(v, parse_chern(choice.with));
    Rational s = opts.s_ray ? *opts.s_ray : default_s_ray(v);
    if (w.is_semicircle()) {
      auto t_sq = crossing_t_sq(w, s);
      if (!t_sq) throw Error(ErrorKind::NotOnWall, "the wall does not meet the ray s = " + s.str());
      return {w, StabilityPoint{s, *t_sq}};
    }
    if (w.vertical().s != s) throw Error(ErrorKind::NotOnWall, "the vertical wall misses the ray s = " + s.str());
    return {w, StabilityPoint{s, Rational(1)}};
  }
  auto en = enumerate(v, opts);
  if (en.walls.empty()) throw Error(ErrorKind::BadOptions, "no walls to select from");
  if (!choice.radius_sq.empty()) {
    Rational target = Rational::parse(choice.radius_sq);
    for (const auto& rec : en.walls) {
      if (rec.wall.semicircle().radius_sq == target) return {rec.wall, StabilityPoint{en.options.s_ray, rec.crossing_t_sq}};
    }
    throw Error(ErrorKind::BadOptions, "no enumerated wall has radius_sq " + target.str());
  }
  long i = choice.index.value_or(0);
  if (i < 0 || static_cast<std::size_t>(i) >= en.walls.size()) {
    throw Error(ErrorKind::BadOptions, "wall index " + std::to_string(i) + " out of range");
  }
  const auto& rec = en.walls[static_cast<std::size_t>(i)];
  return {rec.wall, StabilityPoint{en.options.s_ray, rec.crossing_t_sq}};
}

std::string king_summary_text(const std::vector<KingCandidate>& list, std::size_t shown) {
  std::string out = "  king candidates (a.b <= 0): " + std::to_string(list.size()) + "\n";
  for (std::size_t i = 0; i < list.size() && i < shown; ++i) {
    out += "    b = (" + to_string(list[i].b) + ")  a.b = " + list[i].weight.get_str() + "\n";
  }
  if (list.size() > shown) out += "    ...\n";
  return out;
}

pio::Json king_json(const std::vector<KingCandidate>& list) {
  pio::Json out = pio::Json::array();
  for (const auto& kc : list) out.push_back({{"b", pio::to_json(kc.b)}, {"weight", pio::to_json(kc.weight)}});
  return out;
}

std::string csv_kv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += k + "," + v + "\n";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bridgeland walls and chambers for classes on P^2 (exact arithmetic)", "p2walls"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings st;
  app.add_option("--format", st.format_from_flag, "text | json | csv | svg");
  app.add_option("--config", st.config, "key = value file; flags override it");
  app.add_option("--rank-cap", st.rank_cap, "largest destabilizer rank (default 8)");
  app.add_option("--radius-min-sq", st.radius_min_sq, "only walls with radius^2 above this");
  app.add_option("--s-ray", st.s_ray, "the vertical ray s = s_ray (default derived from v)");
  app.add_option("--t-max-sq", st.t_max_sq, "top of the ray segment in t^2 (default derived from v)");
  app.add_flag("--no-discriminant-filter", st.no_discriminant, "keep factors with negative discriminant");
  app.add_flag("--no-slope-window", st.no_window, "skip the slope-window filter");
  app.add_option("--workers", st.workers, "enumeration threads (0 = all cores)");
  app.add_option("--svg-scale", st.svg_scale, "pixels per unit in SVG output (default 60)");
  app.add_option("--s-range", st.svg_s_range, "SVG horizontal range 'lo,hi'");

  std::string cls_a, cls_b;
  auto* pairing = app.add_subcommand("pairing", "Euler pairings and generic ext^1 of two classes");
  pairing->add_option("u", cls_a, "class r,c,d")->required();
  pairing->add_option("v", cls_b, "class r,c,d")->required();

  auto* wall = app.add_subcommand("wall", "the potential wall of two classes");
  wall->add_option("v", cls_a)->required();
  wall->add_option("w", cls_b)->required();

  auto* walls = app.add_subcommand("walls", "candidate walls crossed by the ray");
  walls->add_option("v", cls_a)->required();

  auto* report = app.add_subcommand("report", "walls with numeric reports and hints");
  report->add_option("v", cls_a)->required();

  auto* mmp = app.add_subcommand("mmp", "directed walk down the ray with quiver and Picard annotations");
  mmp->add_option("v", cls_a)->required();

  std::optional<long> k_opt;
  bool suggest = false;
  WallChoice choice;
  auto add_heart = [&](CLI::App* sub) {
    sub->add_option("v", cls_a)->required();
    sub->add_option("--k", k_opt, "heart index k of A(k)");
    sub->add_flag("--suggest-heart", suggest, "use k = floor(s_ray) + 1");
    sub->add_option("--wall-index", choice.index, "pick the i-th enumerated wall");
    sub->add_option("--wall-radius-sq", choice.radius_sq, "pick the enumerated wall with this radius^2");
    sub->add_option("--with", choice.with, "use the wall of v and this class");
  };
  auto* quiver = app.add_subcommand("quiver", "dimension vector in A(k), plus polarization when a wall is chosen");
  add_heart(quiver);
  auto* polar = app.add_subcommand("polarization", "King polarization of v at a wall");
  add_heart(polar);

  std::string t_list;
  auto* picard = app.add_subcommand("picard-path", "coordinates of w along the ray in the v-perp basis");
  picard->add_option("v", cls_a)->required();
  picard->add_option("--t-sq", t_list, "comma separated t^2 samples (default: around each wall)");

  auto* plot = app.add_subcommand("plot", "SVG picture of the walls");
  plot->add_option("v", cls_a)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!st.format_from_flag.empty()) st.format = st.format_from_flag;
    st.resolve();
    const std::string& fmt = st.format;
    std::string out;

    if (pairing->parsed()) {
      auto u = parse_chern(cls_a);
      auto v = parse_chern(cls_b);
      std::vector<std::pair<std::string, std::string>> rows{
          {"chi_tensor(u,v)", euler_form_tensor(u, v).str()},
          {"chi_hom(u,v)", euler_form_hom(u, v).str()},
          {"chi_hom(v,u)", euler_form_hom(v, u).str()},
          {"lemma51_pairing(u,v)", lemma51_pairing(u, v).str()},
          {"ext1_generic(u,v)", ext1_generic(u, v).get_str()},
          {"ext1_generic(v,u)", ext1_generic(v, u).get_str()}};
      if (fmt == "json") {
        pio::Json j{{"u", pio::to_json(u)}, {"v", pio::to_json(v)}};
        for (const auto& [k, val] : rows) j[k] = val;
        out = pio::dump(j);
      } else if (fmt == "csv") {
        out = csv_kv(rows);
      } else {
        out = "u = " + pio::paren(u) + "\nv = " + pio::paren(v) + "\n";
        std::vector<std::vector<std::string>> table;
        for (const auto& [k, val] : rows) table.push_back({k, "=", val});
        out += pio::table(table);
      }
    } else if (wall->parsed()) {
      auto w = wall_through(parse_chern(cls_a), parse_chern(cls_b));
      if (fmt == "json") {
        out = pio::dump(pio::to_json(w));
      } else if (w.is_semicircle()) {
        auto cells = pio::radius_cells(w.semicircle().radius_sq);
        if (fmt == "csv") {
          out = csv_kv({{"kind", "semicircle"}, {"center", w.semicircle().center.str()}, {"radius_sq", cells[0]}});
        } else {
          out = "semicircle  center " + w.semicircle().center.str() + "  radius_sq " + cells[0] + "  R " + cells[1] +
                " (~" + cells[2] + ")\n";
        }
      } else {
        out = fmt == "csv" ? csv_kv({{"kind", "vline"}, {"s", w.vertical().s.str()}})
                           : "vertical line  s = " + w.vertical().s.str() + "\n";
      }
    } else if (walls->parsed() || report->parsed() || plot->parsed()) {
      auto v = parse_chern(cls_a);
      auto en = enumerate(v, st.opts);
      bool with_reports = report->parsed();
      if (with_reports) {
        for (auto& rec : en.walls) rec.report = wall_report(v, rec);
      }
      if (plot->parsed() || fmt == "svg") {
        out = pio::svg_walls(en, st.svg);
      } else if (fmt == "json") {
        out = pio::dump(pio::to_json(en));
      } else if (fmt == "csv") {
        out = pio::csv_walls(en);
      } else {
        out = pio::text_walls(en, with_reports);
        if (with_reports) {
          for (std::size_t i = 0; i < en.walls.size(); ++i) {
            out += "W" + std::to_string(i) + ":\n" + pio::text_report(*en.walls[i].report);
          }
        }
      }
    } else if (mmp->parsed()) {
      auto v = parse_chern(cls_a);
      auto walk = mmp_walk(v, st.opts);
      if (fmt == "json") {
        out = pio::dump(pio::to_json(walk));
      } else if (fmt == "csv") {
        WallEnumeration en{v, walk.options, {}, {}};
        for (const auto& step : walk.steps) en.walls.push_back(step.record);
        out = pio::csv_walls(en);
      } else {
        out = pio::text_walk(walk);
      }
    } else if (quiver->parsed() || polar->parsed()) {
      auto v = parse_chern(cls_a);
      if (!k_opt && !suggest) throw Error(ErrorKind::BadOptions, "give --k or --suggest-heart");
      HeartIndex k{Integer(0)};
      if (k_opt) {
        k.k = Integer(*k_opt);
      } else {
        k = suggest_heart(st.opts.s_ray ? *st.opts.s_ray : default_s_ray(v));
      }
      auto dv = dimension_vector(v, k);
      bool want_wall = polar->parsed() || choice.given();
      pio::Json j{{"input", pio::to_json(v)}, {"k", pio::to_json(k.k)}, {"sign", std::to_string(dv.sign)},
                  {"n", pio::to_json(dv.n)}};
      std::string text = "v = " + pio::paren(v) + "  k = " + k.k.get_str() + "  sign = " + (dv.sign > 0 ? "+" : "-") +
                         "  n = (" + to_string(dv.n) + ")\n";
      std::vector<std::pair<std::string, std::string>> rows{
          {"k", k.k.get_str()}, {"sign", std::to_string(dv.sign)}, {"n", "\"" + to_string(dv.n) + "\""}};
      if (want_wall) {
        auto sel = select_wall(v, st.opts, choice);
        auto datum = polarization(v, sel.wall, sel.point, k);
        auto kings = king_candidates(datum.dimvec, datum.polarization);
        j = pio::to_json(datum);
        j["input"] = pio::to_json(v);
        j["wall"] = pio::to_json(sel.wall);
        j["point"] = {{"s", pio::to_json(sel.point.s)}, {"t_sq", pio::to_json(sel.point.t_sq)}};
        j["king_candidates"] = king_json(kings);
        text = "v = " + pio::paren(v) + "  at s = " + sel.point.s.str() + ", t^2 = " + sel.point.t_sq.str() + "\n" +
               pio::text_quiver(datum) + king_summary_text(kings, 10);
        rows.push_back({"a", "\"" + to_string(datum.polarization.a) + "\""});
        rows.push_back({"w", "\"" + datum.w.w.str() + "\""});
        rows.push_back({"king_candidates", std::to_string(kings.size())});
      }
      out = fmt == "json" ? pio::dump(j) : fmt == "csv" ? csv_kv(rows) : text;
    } else if (picard->parsed()) {
      auto v = parse_chern(cls_a);
      std::vector<Rational> samples;
      Rational s;
      if (!t_list.empty()) {
        samples = pio::parse_rational_list(t_list);
        s = st.opts.s_ray ? *st.opts.s_ray : default_s_ray(v);
        check_region(v, s);
      } else {
        auto walk = mmp_walk(v, st.opts);
        s = walk.options.s_ray;
        for (const auto& step : walk.steps) {
          if (!step.picard) continue;
          for (const auto* p : {&step.picard->above, &step.picard->below}) {
            if (std::find(samples.begin(), samples.end(), p->t_sq) == samples.end()) samples.push_back(p->t_sq);
          }
        }
      }
      auto path = picard_path(v, s, samples);
      if (fmt == "json") {
        pio::Json arr = pio::Json::array();
        for (const auto& p : path) arr.push_back(pio::to_json(p));
        out = pio::dump({{"input", pio::to_json(v)},
                         {"s_ray", pio::to_json(s)},
                         {"perp_basis", pio::to_json(perp_basis(v))},
                         {"samples", arr}});
      } else {
        out = pio::csv_picard(path);
      }
    }
    std::cout << out;
    return 0;
  } catch (const Error& e) {
    std::cerr << "p2walls: " << e.what() << "\n";
    return exit_code(e.kind());
  }
}
