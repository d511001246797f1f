#pragma once

#include <cstdint>
#include <vector>

#include "levyembed/boundary.hpp"
#include "levyembed/levy_model.hpp"
#include "levyembed/scale_function.hpp"

namespace levyembed {

/// How the lower level acts.
///  TwoSided: stop on any passage below -phi_-(L).
///  SignCondition: stop only inside excursions that start negative; a jump
///    below the level arms it and the path stops on its return to the level.
///  UpOnly: no lower level.
enum class StopMode { TwoSided, SignCondition, UpOnly };

enum class StopKind { Up, DownCreep, DownJump, DownReturn, Censored };

const char* to_string(StopKind k);

struct StopRule {
  Boundary boundary;
  StopMode mode;

  /// Mode implied by the boundary's construction.
  static StopRule for_boundary(const Boundary& b);
  /// First exit from [a, b] with a < 0 < b.
  static StopRule exit_interval(double a, double b);
  /// First passage above eta > 0.
  static StopRule hitting(double eta);
};

struct SimConfig {
  double dt = 1e-5;
  /// Horizon; 0 picks default_t_max.
  double t_max = 0.0;
  std::size_t n_paths = 10000;
  std::uint64_t seed = 42;
  /// Half-width of the local-time band; 0 picks sqrt(dt).
  double epsilon = 0.0;
  unsigned threads = 1;
  int substeps = 16;
};

struct PathOutcome {
  double t = 0.0;
  double x = 0.0;
  /// Local time at 0 drawn exactly given the simulated skeleton.
  double l = 0.0;
  /// Occupation estimate (1/2eps) |{s <= T : |X_s| < eps}|.
  double l_occ = 0.0;
  double sup_x = 0.0;
  StopKind kind = StopKind::Censored;
  std::uint32_t mixed_excursions = 0;
  std::uint64_t steps = 0;

  bool censored() const noexcept { return kind == StopKind::Censored; }
};

/// Per-step record of one trajectory.
struct PathTrace {
  std::vector<double> t;
  std::vector<double> x;
  std::vector<double> l;
  std::vector<double> l_occ;
  std::vector<std::int8_t> sign;
  std::vector<std::uint8_t> armed;
  std::vector<std::uint8_t> jump;
};

struct SimResult {
  std::vector<PathOutcome> paths;
  double dt = 0.0;
  double epsilon = 0.0;
  double t_max = 0.0;
  std::size_t censored = 0;
  std::uint64_t mixed_excursions = 0;
  std::uint64_t steps = 0;
};

/// Horizon of ten expected exit times of the widest box the rule can use, or
/// 1e7 when there is no lower level or the rule may wait below it.
double default_t_max(const StopRule& rule, const ScaleFunction& scale);

/// One path with stream id `path_id`; `trace` receives every step when set.
PathOutcome sample_path(const LevyModel& model, const StopRule& rule, const SimConfig& config,
                        std::uint64_t path_id, PathTrace* trace = nullptr);

/// All paths; results are identical for any thread count. config.t_max must
/// be positive.
SimResult simulate(const LevyModel& model, const StopRule& rule, const SimConfig& config);

SimResult run_stop_T(const LevyModel& model, const Boundary& b, const SimConfig& config);
SimResult run_stop_T_tilde(const LevyModel& model, const Boundary& b, const SimConfig& config);
SimResult run_stop_T_mu(const LevyModel& model, const Boundary& b, const SimConfig& config);

/// Running (1/2eps) * occupation time of (-eps, eps) along a trace.
std::vector<double> estimate_local_time(const PathTrace& trace, double epsilon);

}  // namespace levyembed
