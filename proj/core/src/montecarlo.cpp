#include "levyembed/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "levyembed/errors.hpp"
#include "levyembed/rng.hpp"

namespace levyembed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_config(const LevyModel& model, const SimConfig& c) {
  if (!model.simulable())
    throw UnsupportedError("simulation needs a Gaussian component (sigma > 0)");
  if (!(c.dt > 0.0)) throw DomainError("dt must be positive");
  if (!(c.t_max > 0.0)) throw DomainError("t_max must be positive");
  if (c.substeps < 1) throw DomainError("substeps must be >= 1");
  const double eps = c.epsilon > 0.0 ? c.epsilon : std::sqrt(c.dt);
  if (eps < std::sqrt(c.dt) / 10.0) throw DomainError("epsilon must be >= sqrt(dt)/10");
}

// Largest step with 6 sigma sqrt(step) + |drift| step <= dist.
double safe_step(double dist, double sigma, double drift) {
  const double a = std::abs(drift);
  if (a == 0.0) {
    const double u = dist / (6.0 * sigma);
    return u * u;
  }
  const double u = (-6.0 * sigma + std::sqrt(36.0 * sigma * sigma + 4.0 * a * dist)) / (2.0 * a);
  return u * u;
}

}  // namespace

const char* to_string(StopKind k) {
  switch (k) {
    case StopKind::Up:
      return "up";
    case StopKind::DownCreep:
      return "down_creep";
    case StopKind::DownJump:
      return "down_jump";
    case StopKind::DownReturn:
      return "down_return";
    case StopKind::Censored:
      return "censored";
  }
  return "?";
}

StopRule StopRule::for_boundary(const Boundary& b) {
  switch (b.variant()) {
    case BoundaryVariant::Thm1:
      return {b, StopMode::SignCondition};
    case BoundaryVariant::Thm3:
      return {b, StopMode::UpOnly};
    case BoundaryVariant::Thm2:
    case BoundaryVariant::Constant:
      break;
  }
  return {b, StopMode::TwoSided};
}

StopRule StopRule::exit_interval(double a, double b) {
  if (!(a < 0.0 && b > 0.0)) throw DomainError("exit interval needs a < 0 < b");
  return {Boundary::constant(b, -a), StopMode::TwoSided};
}

StopRule StopRule::hitting(double eta) {
  return {Boundary::constant(eta, kInf), StopMode::UpOnly};
}

double default_t_max(const StopRule& rule, const ScaleFunction& scale) {
  const auto& last = rule.boundary.rows().back();
  double up = 0.0, down = 0.0;
  for (const auto& r : rule.boundary.rows()) {
    up = std::max(up, r.up);
    down = std::max(down, r.down);
  }
  // Waiting for an upward return below the lower level has a heavy tail.
  const bool waits = rule.mode == StopMode::SignCondition && scale.model().has_jumps();
  if (rule.mode == StopMode::UpOnly || waits || !std::isfinite(down) || !std::isfinite(last.down))
    return 1e7;
  if (up + down > scale.x_max()) return 1e7;
  return std::max(10.0 * scale.expected_exit_time(0.0, -down, up), 1.0);
}

PathOutcome sample_path(const LevyModel& model, const StopRule& rule, const SimConfig& config,
                        std::uint64_t path_id, PathTrace* trace) {
  check_config(model, config);
  StreamRng rng(config.seed, path_id);
  const double s2 = model.sigma2();
  const double sigma = std::sqrt(s2);
  const double drift = model.drift();
  const double lam = model.has_jumps() ? model.jump_rate() : 0.0;
  const double dt = config.dt;
  const double sub = dt / config.substeps;
  const double eps = config.epsilon > 0.0 ? config.epsilon : std::sqrt(dt);
  const double near_band = eps + 6.0 * sigma * std::sqrt(dt);
  const double near_level = 4.0 * sigma * std::sqrt(dt);
  const StopMode mode = rule.mode;

  double t = 0.0, x = 0.0, l = 0.0, l_occ = 0.0;
  int sign = 1;
  bool armed = false;
  double armed_level = 0.0;
  double next_jump = lam > 0.0 ? rng.exponential(lam) : kInf;
  BoundaryCursor cursor(rule.boundary);
  Levels lv = cursor.at(0.0);
  double lv_at = 0.0;

  PathOutcome out;
  auto record = [&](bool jumped) {
    if (!trace) return;
    trace->t.push_back(t);
    trace->x.push_back(x);
    trace->l.push_back(l);
    trace->l_occ.push_back(l_occ);
    trace->sign.push_back(static_cast<std::int8_t>(sign));
    trace->armed.push_back(armed ? 1 : 0);
    trace->jump.push_back(jumped ? 1 : 0);
  };
  auto finish = [&](StopKind kind, double xt) {
    out.t = t;
    out.x = xt;
    out.l = l;
    out.l_occ = l_occ;
    out.kind = kind;
    x = xt;
    record(false);
    return out;
  };
  record(false);

  while (true) {
    const double remaining = config.t_max - t;
    if (remaining <= 1e-12 * config.t_max) {
      t = config.t_max;
      return finish(StopKind::Censored, x);
    }

    double dist = lv.up - x;
    if (mode == StopMode::TwoSided) {
      dist = std::min(dist, x + lv.down);
    } else if (mode == StopMode::SignCondition) {
      if (armed) dist = std::min(dist, armed_level - x);
      else if (sign < 0) dist = std::min(dist, x + lv.down);
    }

    double step;
    if (dist < near_level) {
      step = sub;
    } else if (std::abs(x) < near_band) {
      step = dt;
    } else {
      step = std::max(dt, safe_step(std::min(dist, std::abs(x) - eps), sigma, drift));
    }
    step = std::min(step, remaining);
    bool jump_now = false;
    if (t + step >= next_jump) {
      step = next_jump - t;
      jump_now = true;
    }

    if (std::abs(x) < eps) l_occ += step / (2.0 * eps);
    const double xg = x + drift * step + sigma * std::sqrt(step) * rng.normal();
    // Local time at 0 of the Brownian bridge from x to xg over `step`:
    // P(L > y) = exp(-((|x| + |xg| + s2 y)^2 - (xg - x)^2) / (2 s2 step)).
    // Touching needs u < exp(-2 x xg / (s2 step)) when both ends share a sign.
    bool touched = false;
    if (x * xg < 20.0 * s2 * step) {
      const double dz = xg - x;
      const double lt =
          (std::sqrt(dz * dz - 2.0 * s2 * step * std::log(rng.uniform())) - std::abs(x) -
           std::abs(xg)) / s2;
      touched = lt > 0.0;
      if (touched) l += lt;
    }
    t += step;
    ++out.steps;

    // A positive excursion that jumped below 0 ends when the path touches 0.
    if (touched || (x >= 0.0) != (xg >= 0.0)) sign = xg >= 0.0 ? 1 : -1;

    if (l != lv_at) {
      lv = cursor.at(l);
      lv_at = l;
    }

    if (xg >= lv.up) return finish(StopKind::Up, lv.up);
    if (mode == StopMode::TwoSided && xg <= -lv.down) return finish(StopKind::DownCreep, -lv.down);
    if (mode == StopMode::SignCondition) {
      if (armed) {
        if (xg >= armed_level) return finish(StopKind::DownReturn, armed_level);
      } else if (sign < 0 && xg <= -lv.down) {
        return finish(StopKind::DownCreep, -lv.down);
      }
    }
    out.sup_x = std::max(out.sup_x, xg);

    if (jump_now) {
      const double u1 = rng.uniform(), u2 = rng.uniform();
      const double xj = xg - model.jump_law().sample(u1, u2);
      next_jump = t + rng.exponential(lam);
      x = xj;
      if (mode == StopMode::TwoSided && xj <= -lv.down) return finish(StopKind::DownJump, xj);
      if (mode == StopMode::SignCondition) {
        if (sign > 0 && xg > 0.0 && xj < 0.0) ++out.mixed_excursions;
        if (sign < 0 && !armed && xj < -lv.down) {
          armed = true;
          armed_level = -lv.down;
        }
      }
      record(true);
    } else {
      x = xg;
      record(false);
    }
  }
}

SimResult simulate(const LevyModel& model, const StopRule& rule, const SimConfig& config) {
  check_config(model, config);
  SimResult res;
  res.paths.resize(config.n_paths);
  res.dt = config.dt;
  res.epsilon = config.epsilon > 0.0 ? config.epsilon : std::sqrt(config.dt);
  res.t_max = config.t_max;

  std::atomic<std::size_t> next{0};
  constexpr std::size_t kChunk = 64;
  auto worker = [&] {
    while (true) {
      const std::size_t start = next.fetch_add(kChunk);
      if (start >= config.n_paths) return;
      const std::size_t end = std::min(start + kChunk, config.n_paths);
      for (std::size_t i = start; i < end; ++i) res.paths[i] = sample_path(model, rule, config, i);
    }
  };
  const unsigned n_threads = std::max(1u, config.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& p : res.paths) {
    res.censored += p.censored() ? 1 : 0;
    res.mixed_excursions += p.mixed_excursions;
    res.steps += p.steps;
  }
  return res;
}

SimResult run_stop_T(const LevyModel& model, const Boundary& b, const SimConfig& config) {
  if (b.variant() != BoundaryVariant::Thm2 && b.variant() != BoundaryVariant::Constant)
    throw DomainError("two-sided stopping needs a density-embedding or constant boundary");
  return simulate(model, {b, StopMode::TwoSided}, config);
}

SimResult run_stop_T_tilde(const LevyModel& model, const Boundary& b, const SimConfig& config) {
  if (!model.unbounded_variation()) throw UnsupportedError("sign condition needs sigma > 0");
  return simulate(model, {b, StopMode::SignCondition}, config);
}

SimResult run_stop_T_mu(const LevyModel& model, const Boundary& b, const SimConfig& config) {
  return simulate(model, {b, StopMode::UpOnly}, config);
}

std::vector<double> estimate_local_time(const PathTrace& trace, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  std::vector<double> l(trace.t.size(), 0.0);
  for (std::size_t i = 1; i < trace.t.size(); ++i) {
    const double dtt = trace.t[i] - trace.t[i - 1];
    l[i] = l[i - 1] + (std::abs(trace.x[i - 1]) < epsilon ? dtt / (2.0 * epsilon) : 0.0);
  }
  return l;
}

}  // namespace levyembed
