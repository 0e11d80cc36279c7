#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "symdyn/cli.hpp"
#include "symdyn/error.hpp"

using namespace symdyn;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "symdyn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("symdyn_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  std::string l;
  while (std::getline(in, l))
    if (l == line) return true;
  return false;
}

TEST(LatticeInfo, Icosahedron) {
  const CliResult r = run({"lattice-info", "icosahedron"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "vertices: 12"));
  EXPECT_TRUE(has_line(r.out, "group_order: 120"));
  EXPECT_TRUE(has_line(r.out, "states: 4096"));
  EXPECT_TRUE(has_line(r.out, "orbits_burnside: 82"));
  EXPECT_TRUE(has_line(r.out, "orbits_enumerated: 82"));
}

TEST(LatticeInfo, SmallCircleByHand) {
  // S3 on 3-bit strings: orbits by number of ones.
  const CliResult r = run({"lattice-info", "--lattice", "circle(3)", "--format", "csv"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "circle(3),3,2,3,6,true,8,4"));
}

TEST(LatticeInfo, BuckyballSkipsEnumeration) {
  const CliResult r = run({"lattice-info", "buckyball"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "states: 1152921504606846976"));
  EXPECT_TRUE(has_line(r.out, "orbits_burnside: 9607679885269312"));
  EXPECT_TRUE(has_line(r.out, "orbits_enumerated: skipped (state space above cap)"));
}

TEST(LatticeInfo, FromFile) {
  const fs::path dir = scratch("file");
  fs::create_directories(dir);
  std::ofstream(dir / "k4.txt") << "# name: k4\n4 3\n0: 1 2 3\n1: 0 2 3\n2: 0 1 3\n3: 0 1 2\n";
  const CliResult r = run({"lattice-info", "--lattice-file", (dir / "k4.txt").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "group_order: 24"));
  EXPECT_TRUE(has_line(r.out, "orbits_enumerated: 5"));
}

TEST(Errors, ReportedWithNonzeroStatus) {
  EXPECT_EQ(run({"lattice-info", "octahedron"}).status, 1);
  EXPECT_EQ(run({"portrait", "buckyball", "--rules", "86"}).status, 1);
  EXPECT_NE(run({"frobnicate"}).status, 0);
  EXPECT_NE(run({}).status, 0);
  const CliResult r = run({"scan", "tetrahedron", "--rules", "86", "--property", "bijective"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("unknown property"), std::string::npos);
  EXPECT_EQ(run({"lattice-info", "square(5)", "--group", "diagonal"}).status != 0, true);
  EXPECT_EQ(run({"lattice-info", "dodecahedron", "--group", "translations"}).status, 1);
}

TEST(Portrait, Rule86Summary) {
  const fs::path dir = scratch("portrait");
  const CliResult r = run({"portrait", "hexahedron", "--rules", "86", "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "86,B123/S0,22,7,45,36,4,4,39/128"));
  EXPECT_TRUE(fs::exists(dir / "portrait_86.dot"));
  EXPECT_TRUE(fs::exists(dir / "portrait_86.csv"));
}

TEST(Portrait, IdentityOnTetrahedron) {
  const CliResult r = run({"portrait", "tetrahedron", "--rules", "B/S0123"});
  ASSERT_EQ(r.status, 0) << r.err;
  // Five orbit cycles, sixteen state-level fixed points, no spaceships.
  EXPECT_TRUE(has_line(r.out, "170,B/S0123,5,5,16,0,5,0,3/8"));
}

TEST(Scan, ReversibleSuites) {
  const fs::path dir = scratch("scan");
  CliResult r = run({"scan", "--reversible", "--lattice", "tetrahedron", "--rules", "all136", "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "reversible: 43 51 77 85 170 178 204 212"));
  r = run({"scan", "--reversible", "--lattice", "hexahedron", "--rules", "all136", "--out", dir.string()});
  EXPECT_TRUE(has_line(r.out, "reversible: 51 85 170 204"));
  EXPECT_EQ(slurp(dir / "scan.csv").substr(0, 44), "rule_code,property,value\n0,reversible,false\n");
}

TEST(Scan, CsvToStdout) {
  const CliResult r = run({"scan", "--has-spaceship", "--lattice", "tetrahedron", "--rules", "170"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "rule_code,property,value\n170,has_spaceship,false\n");
}

TEST(Trajectory, GliderUnderBothGroups) {
  CliResult r = run({"trajectory", "square(8,moore,torus)", "--rules", "B3/S23", "--state", "glider"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "orbit_period: 2"));
  EXPECT_TRUE(has_line(r.out, "spaceship: true"));
  r = run({"trajectory", "square(8,moore,torus)", "--rules", "B3/S23", "--state", "glider", "--group",
           "translations"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "orbit_period: 4"));
}

TEST(Trajectory, ZerosAreFixed) {
  const CliResult r = run({"trajectory", "square(8,moore)", "--rule", "B3/S23", "--state", "zeros"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "orbit_period: 1"));
  EXPECT_TRUE(has_line(r.out, "state_period: 1"));
  EXPECT_TRUE(has_line(r.out, "shift: ()"));
}

TEST(Trajectory, BudgetExhaustionIsDistinct) {
  const CliResult r = run({"trajectory", "square(8,moore)", "--rule", "B3/S23", "--state", "glider", "--steps", "1"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("budget exhausted"), std::string::npos);
}

TEST(Trajectory, StateParsing) {
  const Lattice hexa = hexahedron();
  EXPECT_EQ(parse_state("10000000", hexa), 128u);
  EXPECT_EQ(parse_state("128", hexa), 128u);
  EXPECT_THROW(parse_state("256", hexa), Error);
  EXPECT_THROW(parse_state("glider", hexa), Error);
  EXPECT_THROW(parse_state("x", hexa), Error);
  const Lattice sq = square(8, Neighborhood::moore);
  EXPECT_EQ(std::popcount(glider_state(sq)), 5);
}

TEST(Ising, DodecahedronAndCircle) {
  const fs::path dir = scratch("ising");
  CliResult r = run({"ising", "dodecahedron", "--out", dir.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "-24,-18,-1.200000,-0.900000,2"));
  EXPECT_TRUE(has_line(r.out, "-16,-12,-0.800000,-0.600000,1"));
  EXPECT_TRUE(fs::exists(dir / "spectrum.csv"));
  EXPECT_TRUE(fs::exists(dir / "intruders.csv"));
  EXPECT_TRUE(fs::exists(dir / "entropy.svg"));
  r = run({"ising", "circle(12)"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(has_line(r.out, "intruders: 0"));
}

TEST(Cache, HitGivesIdenticalOutput) {
  const fs::path cache = scratch("cache");
  const CliResult first = run({"portrait", "dodecahedron", "--rules", "86,30", "--cache", cache.string()});
  ASSERT_EQ(first.status, 0) << first.err;
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(cache)) ++files;
  EXPECT_EQ(files, 2u);
  const CliResult second = run({"portrait", "dodecahedron", "--rules", "86,30", "--cache", cache.string()});
  EXPECT_EQ(second.out, first.out);
  // A different group must not reuse the entry.
  const CliResult other = run({"lattice-info", "square(4)", "--group", "translations", "--cache", cache.string()});
  ASSERT_EQ(other.status, 0) << other.err;
  files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(cache)) ++files;
  EXPECT_EQ(files, 4u);
}

TEST(Cache, OutputIndependentOfWorkers) {
  const CliResult a = run({"ising", "dodecahedron", "--workers", "1"});
  const CliResult b = run({"ising", "dodecahedron", "--workers", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(RuleList, Expansion) {
  EXPECT_EQ(parse_rule_list({"all136"}, 3).size(), 136u);
  EXPECT_EQ(parse_rule_list({"all"}, 3).size(), 256u);
  EXPECT_EQ(parse_rule_list({"86,170", "86"}, 3).size(), 2u);
  EXPECT_EQ(parse_rule_list({"B3/S23"}, 8)[0].code(), 224u);
  EXPECT_THROW(parse_rule_list({"1000"}, 3), Error);
}

TEST(Groups, TranslationsOnlyOnSquareTori) {
  EXPECT_EQ(build_group(square(5), GroupMode::translations).order(), 25u);
  EXPECT_THROW(build_group(square(5, Neighborhood::von_neumann, Closure::klein), GroupMode::translations), Error);
  EXPECT_THROW(build_group(circle(5), GroupMode::translations), Error);
}

}  // namespace
