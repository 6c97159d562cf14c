// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <set>

#include "properties.hpp"
#include "support.hpp"

using namespace p2walls;
using Json = io::Json;

namespace {

ChernCharacter ch(const char* s) { return parse_chern(s); }
Rational q(const char* s) { return Rational::parse(s); }

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Json cli_json(const std::string& args, Check& c) {
  auto [code, out] = testing_support::run(testing_support::cli(args));
  c.expect(code == 0, args + " exited " + std::to_string(code));
  if (code != 0) return Json();
  return Json::parse(out);
}

bool contains_sub(const Json& wall, const char* cls) {
  auto v = io::to_json(ch(cls));
  for (const auto& d : wall["destabilizers"]) {
    if (d["sub"] == v) return true;
  }
  return false;
}

/// Shared body of criteria 1 and 2: radius multiset plus one member per wall.
Check golden(const std::string& cls, const std::vector<std::string>& radii, const std::vector<const char*>& subs,
             const std::vector<std::pair<std::string, long>>& absent) {
  Check c;
  Json j = cli_json("walls " + cls + " --format json", c);
  if (!c.ok) return c;
  c.expect(j["walls"].size() == radii.size(), "wall count " + std::to_string(j["walls"].size()));
  for (std::size_t i = 0; c.ok && i < radii.size(); ++i) {
    const auto& w = j["walls"][i];
    c.expect(w["wall"]["radius_sq"] == radii[i], "radius_sq " + w["wall"]["radius_sq"].dump());
    c.expect(contains_sub(w, subs[i]), std::string("missing destabilizer ") + subs[i]);
  }
  for (const auto& [r, rank] : absent) {
    for (const auto& w : j["walls"]) {
      if (w["wall"]["radius_sq"] != r) continue;
      for (const auto& d : w["destabilizers"]) {
        c.expect(rank < 0 || d["sub"][0] != std::to_string(rank), "unexpected wall radius_sq " + r);
      }
      c.expect(rank >= 0, "unexpected wall radius_sq " + r);
    }
  }
  return c;
}

Check criterion1() { return golden("0,4,-4", {"4", "2", "1"}, {"1,1,1/2", "1,1,-1/2", "2,0,0"}, {{"3", -1}}); }

Check criterion2() {
  return golden("0,5,-15/2", {"25/4", "17/4", "9/4", "1/4"}, {"1,1,1/2", "1,1,-1/2", "1,2,-3", "5,-5,5/2"},
                {{"5/4", 2}});
}

Check criterion3() {
  Check c;
  auto v = ch("1,2,-3");
  struct Row {
    const char* sub;
    const char* center;
    const char* radius_sq;
  };
  for (const Row& row : {Row{"1,1,1/2", "-7/2", "81/4"}, Row{"1,1,-1/2", "-5/2", "41/4"}, Row{"1,0,0", "-3/2", "9/4"},
                         Row{"1,1,-3/2", "-3/2", "9/4"}}) {
    auto w = wall_through(v, ch(row.sub));
    c.expect(w.is_semicircle() && w.semicircle().center == q(row.center) && w.semicircle().radius_sq == q(row.radius_sq),
             std::string("wall of ") + row.sub);
  }
  c.expect(wall_through(v, ch("1,0,0")).same_locus(wall_through(v, ch("1,1,-3/2"))), "last two walls differ");
  return c;
}

Check criterion4() {
  Check c;
  c.expect(ext1_generic(ch("1,1,1/2"), ch("-1,4,-8")) == 6, "ext1 6");
  c.expect(ext1_generic(ch("1,1,1/2"), ch("-1,3,-9/2")) == 3, "ext1 3");
  c.expect(ext1_generic(ch("-1,4,-7"), ch("1,1,-1/2")) == 19, "ext1 19");
  c.expect(ext1_generic(ch("1,1,-1/2"), ch("-1,4,-7")) == 4, "ext1 4");
  c.expect(lemma51_pairing(ch("1,1,-1/2"), ch("-1,4,-7")) == Rational(15), "pairing 15");
  return c;
}

Check criterion5() {
  Check c;
  auto check_walk = [&](const char* cls, const char* s, const char* last_radius, std::vector<Hint> expected) {
    EnumerationOptions o;
    o.s_ray = q(s);
    auto walk = mmp_walk(ch(cls), o);
    std::vector<Hint> hints;
    for (const auto& st : walk.steps) hints.push_back(st.report.primary);
    c.expect(hints == expected, std::string("hint sequence for ") + cls);
    c.expect(!walk.steps.empty() && walk.steps.back().record.wall.semicircle().radius_sq == q(last_radius) &&
                 walk.steps.back().report.has(Hint::CollapsingCandidate) && walk.reached_collapsing,
             std::string("collapsing wall for ") + cls);
  };
  check_walk("0,4,-4", "-1", "1", {Hint::FlipCandidate, Hint::DivisorialCandidate, Hint::CollapsingCandidate});
  check_walk("0,5,-15/2", "-3/2", "1/4",
             {Hint::FlipCandidate, Hint::FlipCandidate, Hint::DivisorialCandidate, Hint::CollapsingCandidate});
  return c;
}

Check criterion6() {
  Check c;
  for (const auto& r : properties::all()) {
    c.expect(r.passed(), r.name + " (" + std::to_string(r.failures) + "/" + std::to_string(r.cases) + "): " + r.first_failure);
  }
  return c;
}

Check criterion7() {
  Check c;
  for (long n = 1; n <= 20; ++n) {
    c.expect(gieseker_dimension(make_chern(1, 0, -n)) == 2 * n, "n = " + std::to_string(n));
  }
  return c;
}

Check criterion8() {
  Check c;
  std::set<std::string> outputs;
  for (int i = 0; i < 5; ++i) {
    auto [code, out] = testing_support::run(testing_support::cli("mmp 0,5,-15/2 --format json"));
    c.expect(code == 0, "exit " + std::to_string(code));
    outputs.insert(out);
  }
  for (const char* w : {"1", "4"}) {
    auto [code, out] = testing_support::run(testing_support::cli(std::string("mmp 0,5,-15/2 --format json --workers ") + w));
    c.expect(code == 0, "exit " + std::to_string(code));
    outputs.insert(out);
  }
  c.expect(outputs.size() == 1, std::to_string(outputs.size()) + " distinct outputs");
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Check()>>> criteria{
      {"golden table for (0,4,-4)", criterion1},
      {"golden table for (0,5,-15/2)", criterion2},
      {"Hilbert scheme walls of (1,2,-3)", criterion3},
      {"ext^1 cross-checks", criterion4},
      {"collapsing walls and hint sequences", criterion5},
      {"property suites", criterion6},
      {"dimension of Hilbert schemes", criterion7},
      {"deterministic mmp output", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first;
    if (!c.ok) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
    failed += c.ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
