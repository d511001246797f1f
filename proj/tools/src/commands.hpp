#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "levyembed/boundary.hpp"
#include "levyembed/montecarlo.hpp"
#include "levyembed/scale_function.hpp"
#include "levyembed/validation.hpp"
#include "scenario.hpp"

namespace levyembed::cli {

enum ExitCode : int {
  kOk = 0,
  kChecksFailed = 1,
  kInadmissible = 2,
  kNumeric = 3,
  kUsage = 64,
};

/// Runs `fn`, mapping library and input errors to exit codes and logging them.
int guarded(const std::function<int()>& fn);

/// "a:b:n" for n points from a to b inclusive, or "x1,x2,...".
std::vector<double> parse_grid(const std::string& text);

ScaleFunction scale_for(const LevyModel& model, const TargetMeasure& mu,
                        std::optional<double> x_max = {}, std::optional<double> h = {});
Boundary boundary_for(int theorem, const TargetMeasure& mu, const ScaleFunction& scale);
SimConfig sim_config(const SimSettings& s);

void write_scale_csv(const std::filesystem::path& out, const ScaleFunction& scale, double x_max,
                     double h, double q);
void write_excursion_csv(const std::filesystem::path& out, const ScaleFunction& scale,
                         const std::vector<double>& etas, const std::vector<double>& deltas);
void write_boundary_csv(const std::filesystem::path& out, const Boundary& b);
void write_law_csv(const std::filesystem::path& out,
                   const std::vector<std::pair<double, double>>& law);
void write_samples_csv(const std::filesystem::path& out, const SimResult& sim);
SimResult read_samples_csv(const std::filesystem::path& in);

nlohmann::json report_json(const Report& r);

struct ScaleTableArgs {
  std::filesystem::path model, out;
  double q = 0.0, x_max = 5.0, h = 1e-3;
};
struct ExcursionTableArgs {
  std::filesystem::path model, out;
  std::string eta_grid = "0.25:4:16", delta_grid = "0.25:4:16";
};
struct BoundaryArgs {
  std::filesystem::path model, measure, out, law;
  int theorem = 2;
};
struct SimulateArgs {
  std::filesystem::path model, measure, out, samples;
  int theorem = 2;
  SimSettings sim;
};
struct ValidateArgs {
  std::filesystem::path model, measure, samples, out;
  int theorem = 2;
};
struct RunArgs {
  std::filesystem::path scenario;
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<std::filesystem::path> out_dir;
};

int cmd_scale_table(const ScaleTableArgs& a);
int cmd_excursion_table(const ExcursionTableArgs& a);
int cmd_boundary(const BoundaryArgs& a);
int cmd_simulate(const SimulateArgs& a);
int cmd_validate(const ValidateArgs& a);

/// Full pipeline for one scenario; writes every artifact into the output
/// directory and returns kOk iff all configured checks pass. `report`
/// receives the consolidated report when set.
int run_scenario(const Scenario& sc, nlohmann::json* report = nullptr);
int cmd_run(const RunArgs& a);

}  // namespace levyembed::cli
