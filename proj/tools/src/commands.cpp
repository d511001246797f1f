#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "levyembed/embedding.hpp"
#include "levyembed/errors.hpp"
#include "levyembed/excursion.hpp"

namespace levyembed::cli {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw UsageError("cannot write " + p.string());
  return out;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

void write_json(const std::filesystem::path& p, const json& j) {
  auto out = open_out(p);
  out << j.dump(2) << '\n';
}

StopKind kind_from_string(const std::string& s) {
  for (StopKind k : {StopKind::Up, StopKind::DownCreep, StopKind::DownJump, StopKind::DownReturn,
                     StopKind::Censored})
    if (s == to_string(k)) return k;
  throw UsageError("samples: unknown stop kind '" + s + "'");
}

struct Analytic {
  std::vector<std::pair<double, double>> law;
  double el_target;
};

Analytic analytic_for(const Boundary& b, const TargetMeasure& mu, const ScaleFunction& scale) {
  ExcursionLaw n(scale);
  return {law_of_LT(b, n), expected_local_time(mu, scale)};
}

json sim_json(const SimResult& r, std::uint64_t seed) {
  return {{"paths", r.paths.size()}, {"dt", r.dt},       {"eps", r.epsilon},
          {"t_max", r.t_max},        {"seed", seed},     {"steps", r.steps}};
}

}  // namespace

int guarded(const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const InadmissibleError& e) {
    spdlog::error("inadmissible target: {} (lhs {:.10g}, rhs {:.10g})", e.what(), e.lhs(), e.rhs());
    return kInadmissible;
  } catch (const NumericError& e) {
    spdlog::error("numeric failure: {}", e.what());
    return kNumeric;
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  } catch (const DomainError& e) {
    spdlog::error("invalid input: {}", e.what());
    return kUsage;
  } catch (const UnsupportedError& e) {
    spdlog::error("unsupported: {}", e.what());
    return kUsage;
  } catch (const json::exception& e) {
    spdlog::error("malformed json: {}", e.what());
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  }
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  auto to_double = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad grid '" + text + "'");
    }
  };
  if (text.find(':') != std::string::npos) {
    std::stringstream ss(text);
    std::string a, b, n;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n))
      throw UsageError("grid '" + text + "' is not a:b:n");
    const double lo = to_double(a), hi = to_double(b), cnt = to_double(n);
    if (cnt < 1 || cnt != std::floor(cnt)) throw UsageError("grid count must be a positive integer");
    const int k = static_cast<int>(cnt);
    for (int i = 0; i < k; ++i) out.push_back(k == 1 ? lo : lo + (hi - lo) * i / (k - 1));
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_double(item));
  }
  if (out.empty()) throw UsageError("empty grid");
  return out;
}

ScaleFunction scale_for(const LevyModel& model, const TargetMeasure& mu, std::optional<double> x_max,
                        std::optional<double> h) {
  ScaleGrid g = default_scale_grid(mu.lower(), mu.upper());
  if (x_max) g = {*x_max, *x_max / 8000.0};
  if (h) g.h = *h;
  spdlog::debug("scale grid x_max {} h {}", g.x_max, g.h);
  return build_scale(model, g.x_max, g.h);
}

Boundary boundary_for(int theorem, const TargetMeasure& mu, const ScaleFunction& scale) {
  switch (theorem) {
    case 1: {
      const auto adm = check_admissible_thm1(mu, scale);
      spdlog::info("balance: int W dmu+ = {:.10g}, lower side = {:.10g}", adm.lhs, adm.rhs);
      if (!adm.ok && !adm.remedy.empty()) spdlog::warn("remedy: {}", adm.remedy);
      return build_boundary_thm1(mu, scale);
    }
    case 2:
      return build_boundary_thm2(mu, scale);
    case 3:
      return build_boundary_thm3(mu, scale);
  }
  throw UsageError("theorem must be 1, 2 or 3");
}

SimConfig sim_config(const SimSettings& s) {
  SimConfig c;
  c.dt = s.dt;
  c.epsilon = s.eps;
  c.t_max = s.t_max;
  c.n_paths = s.paths;
  c.seed = s.seed;
  c.threads = s.threads;
  return c;
}

void write_scale_csv(const std::filesystem::path& p, const ScaleFunction& scale, double x_max,
                     double h, double q) {
  auto out = open_out(p);
  out << (q > 0.0 ? "x,W,Wprime,Wbar,WconvW,Wq\n" : "x,W,Wprime,Wbar,WconvW\n");
  const auto n = static_cast<std::size_t>(std::floor(x_max / h + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = std::min(static_cast<double>(i) * h, x_max);
    out << num(x) << ',' << num(scale.w(x)) << ',' << num(scale.w_prime(x)) << ','
        << num(scale.w_bar(x)) << ',' << num(scale.conv_ww(x));
    if (q > 0.0) out << ',' << num(scale.w_q(q, x));
    out << '\n';
  }
}

void write_excursion_csv(const std::filesystem::path& p, const ScaleFunction& scale,
                         const std::vector<double>& etas, const std::vector<double>& deltas) {
  ExcursionLaw n(scale);
  auto out = open_out(p);
  out << "eta,delta,n_sup_ge,n_inf_le,n_joint,n_exit\n";
  for (double eta : etas)
    for (double delta : deltas)
      out << num(eta) << ',' << num(delta) << ',' << num(n.n_sup_ge(eta)) << ','
          << num(n.n_inf_le(delta)) << ',' << num(n.n_joint(eta, delta)) << ','
          << num(n.n_qjoint(0.0, eta, delta)) << '\n';
}

void write_boundary_csv(const std::filesystem::path& p, const Boundary& b) {
  auto out = open_out(p);
  out << "ell,phi_plus,phi_minus\n";
  for (const auto& r : b.rows()) out << num(r.l) << ',' << num(r.up) << ',' << num(r.down) << '\n';
}

void write_law_csv(const std::filesystem::path& p,
                   const std::vector<std::pair<double, double>>& law) {
  auto out = open_out(p);
  out << "ell,survival\n";
  for (const auto& [l, s] : law) out << num(l) << ',' << num(s) << '\n';
}

void write_samples_csv(const std::filesystem::path& p, const SimResult& sim) {
  auto out = open_out(p);
  out << "path_id,T,X_T,L_T,censored,L_occ,kind\n";
  for (std::size_t i = 0; i < sim.paths.size(); ++i) {
    const auto& r = sim.paths[i];
    out << i << ',' << num(r.t) << ',' << num(r.x) << ',' << num(r.l) << ','
        << (r.censored() ? 1 : 0) << ',' << num(r.l_occ) << ',' << to_string(r.kind) << '\n';
  }
}

SimResult read_samples_csv(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot open " + p.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("path_id,T,X_T,L_T,censored", 0) != 0)
    throw UsageError(p.string() + ": unexpected header");
  SimResult res;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() < 5) throw UsageError(fmt::format("{}:{}: too few fields", p.string(), row));
    PathOutcome o;
    try {
      o.t = std::stod(f[1]);
      o.x = std::stod(f[2]);
      o.l = std::stod(f[3]);
      o.l_occ = f.size() > 5 ? std::stod(f[5]) : o.l;
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}:{}: bad number", p.string(), row));
    }
    const bool cens = f[4] == "1";
    o.kind = f.size() > 6 ? kind_from_string(f[6]) : (cens ? StopKind::Censored : StopKind::Up);
    if (cens != o.censored()) throw UsageError(fmt::format("{}:{}: censored flag mismatch", p.string(), row));
    o.sup_x = o.x;
    res.censored += cens ? 1 : 0;
    res.paths.push_back(o);
  }
  return res;
}

json report_json(const Report& r) {
  json atoms = json::array();
  for (const auto& a : r.atoms)
    atoms.push_back({{"x", a.x}, {"expected", a.expected}, {"observed", a.observed}, {"se", a.se}});
  json surv = json::array();
  for (const auto& s : r.survival)
    surv.push_back({{"ell", s.l}, {"analytic", s.analytic}, {"empirical", s.empirical}});
  return {{"paths", r.n_paths},
          {"used", r.n_used},
          {"censored", r.censored},
          {"censoring_rate", r.censoring_rate},
          {"mixed_excursions", r.mixed_excursions},
          {"ks", r.ks},
          {"mean", {{"estimate", r.mean}, {"se", r.mean_se}, {"target", r.mean_target}}},
          {"variance", {{"estimate", r.variance}, {"target", r.variance_target}}},
          {"local_time",
           {{"estimate", r.el},
            {"se", r.el_se},
            {"occupation_estimate", r.el_occ},
            {"occupation_se", r.el_occ_se},
            {"target", r.el_target}}},
          {"atoms", atoms},
          {"survival", surv},
          {"survival_max_dev", r.survival_max_dev},
          {"sup_violations", r.sup_violations}};
}

int cmd_scale_table(const ScaleTableArgs& a) {
  return guarded([&] {
    const auto model = parse_model(read_json(a.model));
    if (!(a.q >= 0.0)) throw UsageError("q must be >= 0");
    const auto scale = build_scale(model, a.x_max, a.h, a.q);
    write_scale_csv(a.out, scale, a.x_max, a.h, a.q);
    spdlog::info("wrote {} ({} rows)", a.out.string(), scale.size());
    return kOk;
  });
}

int cmd_excursion_table(const ExcursionTableArgs& a) {
  return guarded([&] {
    const auto model = parse_model(read_json(a.model));
    const auto etas = parse_grid(a.eta_grid), deltas = parse_grid(a.delta_grid);
    const double reach = *std::max_element(etas.begin(), etas.end()) +
                         *std::max_element(deltas.begin(), deltas.end());
    const double x_max = std::max(20.0, 1.25 * reach);
    const auto scale = build_scale(model, x_max, x_max / 8000.0);
    write_excursion_csv(a.out, scale, etas, deltas);
    spdlog::info("wrote {}", a.out.string());
    return kOk;
  });
}

int cmd_boundary(const BoundaryArgs& a) {
  return guarded([&] {
    const auto model = parse_model(read_json(a.model));
    const TargetMeasure mu(parse_measure(read_json(a.measure)));
    const auto scale = scale_for(model, mu);
    const auto b = boundary_for(a.theorem, mu, scale);
    write_boundary_csv(a.out, b);
    if (!a.law.empty()) write_law_csv(a.law, analytic_for(b, mu, scale).law);
    spdlog::info("wrote {} ({} rows)", a.out.string(), b.rows().size());
    return kOk;
  });
}

int cmd_simulate(const SimulateArgs& a) {
  return guarded([&] {
    const auto model = parse_model(read_json(a.model));
    const TargetMeasure mu(parse_measure(read_json(a.measure)));
    const auto scale = scale_for(model, mu);
    const auto b = boundary_for(a.theorem, mu, scale);
    const auto rule = StopRule::for_boundary(b);
    auto cfg = sim_config(a.sim);
    if (cfg.t_max <= 0.0) cfg.t_max = default_t_max(rule, scale);
    spdlog::info("simulating {} paths, dt {}, t_max {}", cfg.n_paths, cfg.dt, cfg.t_max);
    const auto sim = simulate(model, rule, cfg);
    const auto an = analytic_for(b, mu, scale);
    const auto rep = validate(sim, mu, an.law, an.el_target, a.theorem == 3);
    if (!a.samples.empty()) write_samples_csv(a.samples, sim);
    json j{{"model", model_to_json(model)},
           {"theorem", a.theorem},
           {"simulation", sim_json(sim, cfg.seed)},
           {"report", report_json(rep)}};
    if (!a.out.empty()) write_json(a.out, j);
    spdlog::info("ks {:.4f}, E[L_T] {:.4f} (target {:.4f}), censored {}", rep.ks, rep.el,
                 rep.el_target, rep.censored);
    return kOk;
  });
}

int cmd_validate(const ValidateArgs& a) {
  return guarded([&] {
    const auto model = parse_model(read_json(a.model));
    const TargetMeasure mu(parse_measure(read_json(a.measure)));
    const auto scale = scale_for(model, mu);
    const auto b = boundary_for(a.theorem, mu, scale);
    const auto sim = read_samples_csv(a.samples);
    const auto an = analytic_for(b, mu, scale);
    const auto rep = validate(sim, mu, an.law, an.el_target, a.theorem == 3);
    json j{{"model", model_to_json(model)}, {"theorem", a.theorem}, {"report", report_json(rep)}};
    if (!a.out.empty()) write_json(a.out, j);
    else fmt::print("{}\n", j.dump(2));
    return kOk;
  });
}

int run_scenario(const Scenario& sc, json* report) {
  const TargetMeasure mu(sc.measure);
  const auto& dir = sc.out_dir;
  std::filesystem::create_directories(dir);
  spdlog::info("scenario '{}' -> {}", sc.name, dir.string());

  const auto scale = scale_for(sc.model, mu, sc.scale_x_max, sc.scale_h);
  write_scale_csv(dir / "scale.csv", scale, scale.x_max(), scale.h(), 0.0);
  const double reach = std::min(4.0, scale.x_max() / 2.0);
  const auto grid = parse_grid(fmt::format("{}:{}:16", reach / 16.0, reach));
  write_excursion_csv(dir / "excursion.csv", scale, grid, grid);

  const auto b = boundary_for(sc.theorem, mu, scale);
  write_boundary_csv(dir / "boundary.csv", b);
  const auto an = analytic_for(b, mu, scale);
  write_law_csv(dir / "law.csv", an.law);

  const auto rule = StopRule::for_boundary(b);
  auto cfg = sim_config(sc.sim);
  if (cfg.t_max <= 0.0) cfg.t_max = default_t_max(rule, scale);
  spdlog::info("simulating {} paths, dt {}, eps {}, t_max {}", cfg.n_paths, cfg.dt,
               cfg.epsilon, cfg.t_max);
  const auto sim = simulate(sc.model, rule, cfg);
  write_samples_csv(dir / "samples.csv", sim);
  const auto rep = validate(sim, mu, an.law, an.el_target, sc.theorem == 3);

  json checks = json::array();
  bool all = true;
  auto check = [&](const std::string& name, double value, double limit) {
    const bool pass = value <= limit;
    all = all && pass;
    checks.push_back({{"name", name}, {"value", value}, {"limit", limit}, {"pass", pass}});
    spdlog::info("{:<28} {:.5g} (limit {:.5g}) {}", name, value, limit, pass ? "PASS" : "FAIL");
  };
  const auto& c = sc.checks;
  if (c.ks_max) check("ks", rep.ks, *c.ks_max);
  if (c.atom_se)
    for (const auto& a : rep.atoms)
      check(fmt::format("atom {:g} deviation / se", a.x), std::abs(a.observed - a.expected) / a.se,
            *c.atom_se);
  if (c.el_rel) check("E[L_T] relative error", std::abs(rep.el / rep.el_target - 1.0), *c.el_rel);
  if (c.survival_max_dev) check("L_T survival deviation", rep.survival_max_dev, *c.survival_max_dev);
  if (c.censoring_max) check("censoring rate", rep.censoring_rate, *c.censoring_max);

  json j{{"name", sc.name},
         {"model", model_to_json(sc.model)},
         {"theorem", sc.theorem},
         {"simulation", sim_json(sim, cfg.seed)},
         {"report", report_json(rep)},
         {"checks", checks},
         {"pass", all}};
  write_json(dir / "report.json", j);
  if (report) *report = j;
  return all ? kOk : kChecksFailed;
}

int cmd_run(const RunArgs& a) {
  return guarded([&] {
    Scenario sc = parse_scenario(read_json(a.scenario));
    if (a.paths) sc.sim.paths = *a.paths;
    if (a.seed) sc.sim.seed = *a.seed;
    if (a.threads) sc.sim.threads = *a.threads;
    if (a.out_dir) sc.out_dir = *a.out_dir;
    return run_scenario(sc);
  });
}

}  // namespace levyembed::cli
