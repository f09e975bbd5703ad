#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cohom/cli.hpp"
#include "support.hpp"

using namespace cohom;
using Json = io::Json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("cohom_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(Io, ComplexRoundTrip) {
  gen::Rng rng(1);
  auto c = gen::random_complex(rng, 0, {2, 3, 1});
  auto j = io::complex_to_json(c);
  auto back = io::complex_from_json(j);
  EXPECT_EQ(io::complex_to_json(back), j);
  EXPECT_EQ(cohomology(back).dims(), cohomology(c).dims());
}

TEST(Io, DoubleComplexRoundTrip) {
  gen::Rng rng(2);
  auto t = gen::random_tensor_double(rng);
  auto j = io::double_complex_to_json(t.k);
  auto back = io::double_complex_from_json(j);
  EXPECT_EQ(io::double_complex_to_json(back), j);
}

TEST(Io, CoverAndHyperRoundTrip) {
  auto c = function_sheaf({{0, 1}, {1, 2}, {0, 2}});
  auto j = io::cover_to_json(c.nerve, c.sheaf);
  auto back = io::cover_from_json(j);
  EXPECT_EQ(cech_cohomology(back.nerve, back.sheaf).dims(), cech_cohomology(c.nerve, c.sheaf).dims());
  auto p1 = build_p1(3);
  auto h = io::hyper_to_json(p1);
  auto hb = io::hyper_from_json(h);
  EXPECT_EQ(io::hyper_to_json(hb), h);
}

TEST(Io, FormRoundTrip) {
  auto f = parse_form("3/2 * z1^-2 z2 dz1^dz3 - dz2^dz3", 3);
  EXPECT_EQ(io::form_from_json(io::form_to_json(f), 3), f);
}

TEST(Io, RationalsAsStrings) {
  EXPECT_EQ(io::rational_to_json(parse_rational("-3/6")), "-1/2");
  EXPECT_EQ(io::rational_to_json(Rational(4)), "4");
  EXPECT_EQ(io::rational_from_json(Json("6/4"), "x"), Rational(3, 2));
  EXPECT_EQ(io::rational_from_json(Json(3), "x"), Rational(3));
}

TEST(Cli, TorusPresetJson) {
  auto j = run_json({"preset", "torus:2,2"});
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["dims"], Json::parse("[1,2,1]"));
}

TEST(Cli, P1PresetTable) {
  auto r = run({"preset", "p1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dims: (1, 0, 1)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("E1_second"), std::string::npos);
}

TEST(Cli, DerhamReduce) {
  auto j = run_json({"derham", "--n", "1", "--invert", "1", "--window", "4", "--reduce", "z1^-2 dz1"});
  for (const auto& c : j["reduce"]["log_coefficients"]) EXPECT_EQ(c["coef"], "0");
  EXPECT_EQ(j["reduce"]["exactness_witness"], "-z1^-1");
}

TEST(Cli, TableAndJsonCarrySameDims) {
  for (std::vector<std::string> args : {std::vector<std::string>{"preset", "circle"}, {"preset", "torus:1,2"},
                                        {"preset", "p1"}, {"derham", "--n", "2", "--invert", "1", "--window", "2"}}) {
    auto j = run_json(args);
    std::string tuple = "(";
    for (std::size_t i = 0; i < j["dims"].size(); ++i) tuple += (i ? ", " : "") + j["dims"][i].dump();
    tuple += ")";
    auto t = run(args);
    EXPECT_NE(t.out.find("dims: " + tuple), std::string::npos) << t.out;
  }
}

TEST(Cli, Deterministic) {
  auto a = run({"preset", "p1", "--format", "json"});
  auto b = run({"preset", "p1", "--format", "json"});
  EXPECT_EQ(a.out, b.out);
  auto s1 = run({"selftest", "--seed", "5", "--cases", "5", "--format", "json"});
  auto s2 = run({"selftest", "--seed", "5", "--cases", "5", "--format", "json"});
  EXPECT_EQ(s1.code, 0) << s1.out;
  EXPECT_EQ(s1.out, s2.out);
}

TEST(Cli, ComplexFile) {
  auto f = temp_file("c.json", R"({"lo":0,"hi":1,"dims":[2,1],"diffs":[[["1","-1"]]]})");
  auto j = run_json({"complex", f});
  EXPECT_EQ(j["dims"], Json::parse("[1,0]"));
}

TEST(Cli, NotAComplexExitsTwo) {
  auto f = temp_file("bad.json", R"({"lo":0,"hi":2,"dims":[1,1,1],"diffs":[[["1"]],[["1"]]]})");
  auto r = run({"complex", f});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NotAComplex"), std::string::npos) << r.err;
}

TEST(Cli, MalformedInputExitsOne) {
  auto f = temp_file("broken.json", "{\"lo\": 0,\n \"hi\": }");
  auto r = run({"complex", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;
  auto g = temp_file("field.json", R"({"lo":0,"hi":0,"dims":["x"],"diffs":[]})");
  r = run({"complex", g});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("dims"), std::string::npos) << r.err;
  EXPECT_EQ(run({"complex", "/nonexistent/file.json"}).code, 1);
  EXPECT_EQ(run({"preset", "torus:4,4"}).code, 1);
  EXPECT_EQ(run({"derham", "--n", "2", "--invert", "1", "--reduce", "z1 dz2"}).code, 2);
  EXPECT_EQ(run({"derham", "--n", "1", "--invert", "1", "--reduce", "z7"}).code, 1);
  EXPECT_EQ(run({"bogus"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
}

TEST(Cli, Spectral) {
  auto f = temp_file("dc.json", io::double_complex_to_json(support::staircase()).dump());
  auto j = run_json({"spectral", f, "--pages", "3", "--filtration", "first"});
  ASSERT_EQ(j["pages"].size(), 3u);
  bool nonzero_d2 = false;
  for (const auto& d : j["pages"][1]["d_r_ranks"]) nonzero_d2 = nonzero_d2 || d["rank"] != 0;
  EXPECT_TRUE(nonzero_d2);
  EXPECT_EQ(run({"spectral", f, "--pages", "9"}).code, 1);
}

TEST(Cli, CechAndHyperFiles) {
  auto c = function_sheaf({{0, 1}, {1, 2}});
  auto f = temp_file("cover.json", io::cover_to_json(c.nerve, c.sheaf).dump());
  EXPECT_EQ(run_json({"cech", f})["dims"], Json::parse("[3,0]"));
  auto h = temp_file("hyper.json", io::hyper_to_json(build_p1(3)).dump());
  EXPECT_EQ(run_json({"hyper", h})["dims"], Json::parse("[1,0,1]"));
}

TEST(Cli, Help) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("preset"), std::string::npos);
}
