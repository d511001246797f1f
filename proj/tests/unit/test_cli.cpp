#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "levyembed/errors.hpp"
#include "scenario.hpp"

using namespace levyembed;
using namespace levyembed::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto d = fs::temp_directory_path() / ("levyembed_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

json small_scenario(const fs::path& out) {
  return json{{"name", "small"},
              {"model", {{"sigma2", 1.0}, {"drift", 0.0}}},
              {"measure", {{"atoms", {{-1.0, 0.5}, {1.0, 0.5}}}}},
              {"theorem", 1},
              {"simulation", {{"paths", 200}, {"dt", 1e-4}, {"eps", 0.02}, {"seed", 5}}},
              {"checks", {{"censoring_max", 0.5}}},
              {"output_dir", out.string()}};
}

}  // namespace

TEST(Cli, ParseModel) {
  const auto m = parse_model(json::parse(
      R"({"sigma2": 1, "drift": 1, "jumps": {"rate": 1, "law": {"exp_mean": 1}}})"));
  EXPECT_TRUE(m.has_jumps());
  EXPECT_DOUBLE_EQ(m.jump_law().mean(), 1.0);
  const auto back = parse_model(model_to_json(m));
  EXPECT_DOUBLE_EQ(back.psi(0.7), m.psi(0.7));

  const auto mix = parse_model(json::parse(
      R"({"sigma2": 1, "drift": 4, "jumps": {"rate": 2, "law": {"mixture": [{"weight": 0.5, "point": 1}, {"weight": 0.5, "exp_mean": 2}]}}})"));
  EXPECT_DOUBLE_EQ(mix.jump_law().mean(), 1.5);
}

TEST(Cli, RejectsBadInput) {
  EXPECT_THROW(parse_model(json::parse(R"({"sigma2": 1, "drfit": 0})")), UsageError);
  EXPECT_THROW(parse_model(json::parse(R"({"drift": 0})")), UsageError);
  EXPECT_THROW(parse_model(json::parse(R"({"sigma2": "1"})")), UsageError);
  EXPECT_THROW(parse_measure(json::parse(R"({"atoms": [[1]]})")), UsageError);
  EXPECT_THROW(parse_measure(json::parse(R"({"density": {"kind": "gamma"}})")), UsageError);
  EXPECT_THROW(parse_sim(json::parse(R"({"paths": 0})")), UsageError);
  EXPECT_THROW(parse_sim(json::parse(R"({"seed": -1})")), UsageError);
  auto sc = small_scenario("x");
  sc["extra"] = 1;
  EXPECT_THROW(parse_scenario(sc), UsageError);
}

TEST(Cli, ParseMeasureKinds) {
  const TargetMeasure u(parse_measure(json::parse(R"({"density": {"kind": "uniform", "a": -1, "b": 1}})")));
  EXPECT_NEAR(u.cdf(0.0), 0.5, 1e-15);
  const TargetMeasure e(parse_measure(
      json::parse(R"({"density": {"kind": "exp", "rate": 2, "loc": 0, "side": "positive"}})")));
  EXPECT_NEAR(e.mean(), 0.5, 1e-10);
  const TargetMeasure t(parse_measure(json::parse(
      R"({"atoms": [[2, 0.5]], "density": {"kind": "table", "xs": [-1, 1], "fs": [1, 1]}})")));
  EXPECT_NEAR(t.cdf(0.0), 0.25, 1e-14);
}

TEST(Cli, Grid) {
  const auto g = parse_grid("0:1:5");
  ASSERT_EQ(g.size(), 5u);
  EXPECT_DOUBLE_EQ(g[1], 0.25);
  EXPECT_DOUBLE_EQ(g.back(), 1.0);
  EXPECT_EQ(parse_grid("0.5,2,3").size(), 3u);
  EXPECT_THROW(parse_grid("1:0"), UsageError);
  EXPECT_THROW(parse_grid("a,b"), UsageError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(guarded([] { return 0; }), kOk);
  EXPECT_EQ(guarded([]() -> int { throw UsageError("x"); }), kUsage);
  EXPECT_EQ(guarded([]() -> int { throw DomainError("x"); }), kUsage);
  EXPECT_EQ(guarded([]() -> int { throw UnsupportedError("x"); }), kUsage);
  EXPECT_EQ(guarded([]() -> int { throw NumericError("x"); }), kNumeric);
  EXPECT_EQ(guarded([]() -> int { throw InadmissibleError("x", 1.0, 2.0); }), kInadmissible);
  EXPECT_EQ(guarded([]() -> int { return json::parse("{").size(); }), kUsage);
}

TEST(Cli, InadmissibleScenario) {
  const auto dir = scratch("inadm");
  auto j = small_scenario(dir);
  j["measure"] = {{"atoms", {{-1.0, 0.5}, {2.0, 0.5}}}};
  EXPECT_EQ(guarded([&] { return run_scenario(parse_scenario(j)); }), kInadmissible);
}

TEST(Cli, RunIsReproducible) {
  const auto a = scratch("run_a"), b = scratch("run_b");
  json rep;
  ASSERT_EQ(run_scenario(parse_scenario(small_scenario(a)), &rep), kOk);
  ASSERT_EQ(run_scenario(parse_scenario(small_scenario(b))), kOk);
  for (const char* f : {"scale.csv", "excursion.csv", "boundary.csv", "law.csv", "samples.csv"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_TRUE(rep.at("pass").get<bool>());
  const auto back = read_samples_csv(a / "samples.csv");
  EXPECT_EQ(back.paths.size(), 200u);
}

TEST(Cli, FailedCheckGivesExitOne) {
  const auto dir = scratch("fail");
  auto j = small_scenario(dir);
  j["checks"] = {{"ks_max", 1e-9}};
  EXPECT_EQ(run_scenario(parse_scenario(j)), kChecksFailed);
}
