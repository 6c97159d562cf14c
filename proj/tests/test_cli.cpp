#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"

using testing_support::cli;
using testing_support::run;
using Json = p2walls::io::Json;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

Json json_of(const std::string& args) {
  auto [code, out] = run(cli(args + " --format json"));
  EXPECT_EQ(code, 0) << args;
  return Json::parse(out);
}

TEST(Cli, Pairing) {
  auto [code, out] = run(cli("pairing 1,1,1/2 -1,4,-8"));
  EXPECT_EQ(code, 0);
  EXPECT_NE(out.find("ext1_generic(u,v)"), std::string::npos);
  auto j = json_of("pairing 1,1,1/2 -1,4,-8");
  EXPECT_EQ(j["ext1_generic(u,v)"], "6");
  EXPECT_EQ(j["chi_hom(u,v)"], "-6");
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run(cli("pairing 1,1,1/4 1,0,0 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("pairing 1,x,0 1,0,0 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("walls 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("frobnicate 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("walls 0,4,-4 --format xml 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("walls 0,4,-4 --rank-cap 0 2>/dev/null")).first, 2);
  EXPECT_EQ(run(cli("--help >/dev/null")).first, 0);
}

TEST(Cli, MathematicalFailuresExitThree) {
  EXPECT_EQ(run(cli("walls 1,2,-3 --s-ray 3 2>/dev/null")).first, 3);
  EXPECT_EQ(run(cli("wall 1,0,0 2,0,0 2>/dev/null")).first, 3);
  EXPECT_EQ(run(cli("quiver 0,4,-4 --k 0 2>/dev/null")).first, 3);
}

TEST(Cli, Walls) {
  auto j = json_of("walls 0,4,-4");
  ASSERT_EQ(j["walls"].size(), 3u);
  EXPECT_EQ(j["s_ray"], "-1");
  EXPECT_EQ(j["walls"][2]["wall"]["radius_sq"], "1");
  EXPECT_EQ(json_of("walls 0,5,-15/2")["walls"].size(), 4u);

  auto [code, text] = run(cli("walls 0,4,-4"));
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("walls: 3"), std::string::npos);
  EXPECT_NE(text.find("\nW2 "), std::string::npos);
  EXPECT_EQ(text.find("\nW3 "), std::string::npos);
}

TEST(Cli, SingleWall) {
  auto j = json_of("wall 1,2,-3 1,1,-1/2");
  EXPECT_EQ(j["center"], "-5/2");
  EXPECT_EQ(j["radius_sq"], "41/4");
  auto [code, text] = run(cli("wall 0,4,-4 1,1,1/2"));
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("center -1  radius_sq 4  R 2"), std::string::npos) << text;
}

TEST(Cli, ReportAndMmp) {
  auto rep = json_of("report 0,4,-4");
  EXPECT_EQ(rep["walls"][0]["report"]["primary_hint"], "FlipCandidate");
  EXPECT_EQ(rep["walls"][1]["report"]["primary_hint"], "DivisorialCandidate");
  EXPECT_EQ(rep["walls"][2]["report"]["primary_hint"], "CollapsingCandidate");

  auto walk = json_of("mmp 0,5,-15/2");
  ASSERT_EQ(walk["steps"].size(), 4u);
  EXPECT_EQ(walk["steps"][3]["report"]["primary_hint"], "CollapsingCandidate");
  EXPECT_EQ(walk["reached_collapsing"], true);
  EXPECT_EQ(walk["steps"][0]["quiver"]["datum"]["n"], Json::array({"0", "5", "5"}));

  auto [code, csv] = run(cli("mmp 0,4,-4 --format csv"));
  EXPECT_EQ(code, 0);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r',c',d',center,radius_sq,hint");
}

TEST(Cli, Quiver) {
  auto j = json_of("quiver 1,0,-1 --k 0");
  EXPECT_EQ(j["sign"], "-1");
  EXPECT_EQ(j["n"], Json::array({"1", "2", "0"}));
  auto [code, text] = run(cli("quiver 1,0,-1 --k 0"));
  EXPECT_EQ(code, 0);
  EXPECT_NE(text.find("sign = -  n = (1,2,0)"), std::string::npos) << text;
  EXPECT_EQ(run(cli("quiver 1,0,-1 2>/dev/null")).first, 2);
}

TEST(Cli, Polarization) {
  auto j = json_of("polarization 0,4,-4 --k 1 --wall-radius-sq 4");
  EXPECT_EQ(j["n"], Json::array({"6", "8", "2"}));
  EXPECT_EQ(j["w"], Json::array({"-2", "1", "7/2"}));
  EXPECT_TRUE(j["a"] == Json::array({"-4", "3", "0"}) || j["a"] == Json::array({"4", "-3", "0"}));
  EXPECT_GT(j["king_candidates"].size(), 0u);
  auto via_with = json_of("polarization 0,4,-4 --k 1 --with 1,1,1/2");
  EXPECT_EQ(via_with["a"], j["a"]);
  EXPECT_EQ(run(cli("polarization 0,4,-4 --k 1 --wall-radius-sq 3 2>/dev/null")).first, 2);
}

TEST(Cli, PicardPath) {
  auto [code, csv] = run(cli("picard-path 0,4,-4 --t-sq 9,4,1"));
  EXPECT_EQ(code, 0);
  EXPECT_EQ(count(csv, "\n"), 4u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t_sq,x1,x2");
  auto j = json_of("picard-path 0,4,-4");
  EXPECT_GE(j["samples"].size(), 4u);
}

TEST(Cli, Plot) {
  auto [code, svg] = run(cli("plot 0,4,-4"));
  EXPECT_EQ(code, 0);
  EXPECT_EQ(count(svg, "class=\"wall\""), 3u);
  auto [code2, svg2] = run(cli("plot 1,2,-3 --s-range -8,1"));
  EXPECT_EQ(code2, 0);
  EXPECT_EQ(count(svg2, "class=\"wall\""), 3u);
  auto [code3, svg3] = run(cli("walls 0,4,-4 --radius-min-sq 100 --format svg"));
  EXPECT_EQ(code3, 0);
  EXPECT_EQ(count(svg3, "class=\"wall\""), 0u);
  EXPECT_NE(svg3.find("</svg>"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverrides) {
  std::string path = testing::TempDir() + "p2walls_test.cfg";
  {
    std::ofstream f(path);
    f << "# rank-zero window\ns-ray = -3/2\nrank_cap = 4\nformat = json\n";
  }
  auto [code, out] = run(cli("walls 0,5,-15/2 --config '" + path + "'"));
  ASSERT_EQ(code, 0);
  auto j = Json::parse(out);
  EXPECT_EQ(j["options"]["rank_cap"], "4");
  EXPECT_EQ(j["walls"].size(), 4u);

  auto [code2, out2] = run(cli("walls 0,5,-15/2 --config '" + path + "' --rank-cap 8 --radius-min-sq 9/4"));
  ASSERT_EQ(code2, 0);
  auto j2 = Json::parse(out2);
  EXPECT_EQ(j2["options"]["rank_cap"], "8");
  EXPECT_EQ(j2["walls"].size(), 2u);

  {
    std::ofstream f(path);
    f << "colour = blue\n";
  }
  EXPECT_EQ(run(cli("walls 0,4,-4 --config '" + path + "' 2>/dev/null")).first, 2);
  std::remove(path.c_str());
}

TEST(Cli, Deterministic) {
  auto a = run(cli("mmp 0,5,-15/2 --format json --workers 1"));
  auto b = run(cli("mmp 0,5,-15/2 --format json --workers 4"));
  auto c = run(cli("mmp 0,5,-15/2 --format json"));
  EXPECT_EQ(a.first, 0);
  EXPECT_EQ(a.second, b.second);
  EXPECT_EQ(a.second, c.second);
}

}  // namespace
