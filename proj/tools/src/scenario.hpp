#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "levyembed/levy_model.hpp"
#include "levyembed/measure.hpp"

namespace levyembed::cli {

/// Malformed input files or flags; maps to exit code 64.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::filesystem::path& path);

LevyModel parse_model(const nlohmann::json& j);
MeasureSpec parse_measure(const nlohmann::json& j);
nlohmann::json model_to_json(const LevyModel& m);

struct SimSettings {
  std::size_t paths = 20000;
  double dt = 1e-5;
  double eps = 0.01;
  double t_max = 0.0;
  std::uint64_t seed = 42;
  unsigned threads = 1;
};

/// Thresholds applied by `run`; a missing entry disables that check.
struct Checks {
  std::optional<double> ks_max;
  std::optional<double> atom_se;
  std::optional<double> el_rel;
  std::optional<double> survival_max_dev;
  std::optional<double> censoring_max;
};

struct Scenario {
  std::string name;
  LevyModel model;
  MeasureSpec measure;
  int theorem = 2;
  std::optional<double> scale_x_max;
  std::optional<double> scale_h;
  SimSettings sim;
  Checks checks;
  std::filesystem::path out_dir;
};

Scenario parse_scenario(const nlohmann::json& j);

SimSettings parse_sim(const nlohmann::json& j);

}  // namespace levyembed::cli
