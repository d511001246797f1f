#include "scenario.hpp"

#include <fstream>
#include <initializer_list>

namespace levyembed::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw UsageError(std::string(where) + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw UsageError(std::string(where) + ": unknown key '" + key + "'");
  }
}

double number(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) throw UsageError(std::string(where) + ": missing '" + key + "'");
  const auto& v = j.at(key);
  if (!v.is_number()) throw UsageError(std::string(where) + ": '" + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const char* where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

std::vector<double> number_list(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw UsageError(std::string(where) + ": '" + key + "' must be an array");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw UsageError(std::string(where) + ": '" + key + "' holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

JumpComponent parse_component(const json& j, double weight) {
  only_keys(j, {"exp_mean", "point"}, "jump law");
  if (j.size() != 1) throw UsageError("jump law: give exactly one of exp_mean, point");
  if (j.contains("exp_mean")) return {weight, JumpKind::Exponential, number(j, "exp_mean", "jump law")};
  return {weight, JumpKind::Point, number(j, "point", "jump law")};
}

std::optional<double> optional_number(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return number(j, key, where);
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

LevyModel parse_model(const json& j) {
  only_keys(j, {"sigma2", "drift", "jumps"}, "model");
  const double sigma2 = number(j, "sigma2", "model");
  const double drift = number_or(j, "drift", 0.0, "model");
  if (!j.contains("jumps") || j.at("jumps").is_null()) return LevyModel(sigma2, drift);

  const json& jj = j.at("jumps");
  only_keys(jj, {"rate", "law"}, "jumps");
  const double rate = number(jj, "rate", "jumps");
  if (!jj.contains("law")) throw UsageError("jumps: missing 'law'");
  const json& law = jj.at("law");
  if (law.is_object() && law.contains("mixture")) {
    only_keys(law, {"mixture"}, "jump law");
    if (!law.at("mixture").is_array()) throw UsageError("jump law: 'mixture' must be an array");
    std::vector<JumpComponent> comps;
    for (const auto& c : law.at("mixture")) {
      only_keys(c, {"weight", "exp_mean", "point"}, "mixture component");
      json inner = c;
      inner.erase("weight");
      comps.push_back(parse_component(inner, number(c, "weight", "mixture component")));
    }
    return LevyModel(sigma2, drift, rate, JumpLaw::mixture(std::move(comps)));
  }
  const auto comp = parse_component(law, 1.0);
  return LevyModel(sigma2, drift, rate,
                   comp.kind == JumpKind::Exponential ? JumpLaw::exponential(comp.scale)
                                                      : JumpLaw::point(comp.scale));
}

json model_to_json(const LevyModel& m) {
  json j{{"sigma2", m.sigma2()}, {"drift", m.drift()}};
  if (m.has_jumps()) {
    json mix = json::array();
    for (const auto& c : m.jump_law().components()) {
      json e{{"weight", c.weight}};
      e[c.kind == JumpKind::Exponential ? "exp_mean" : "point"] = c.scale;
      mix.push_back(e);
    }
    j["jumps"] = {{"rate", m.jump_rate()}, {"law", {{"mixture", mix}}}};
  }
  return j;
}

MeasureSpec parse_measure(const json& j) {
  only_keys(j, {"atoms", "density"}, "measure");
  MeasureSpec spec;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw UsageError("measure: 'atoms' must be an array");
    for (const auto& a : j.at("atoms")) {
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw UsageError("measure: each atom is [x, mass]");
      spec.atoms.emplace_back(a[0].get<double>(), a[1].get<double>());
    }
  }
  if (j.contains("density") && !j.at("density").is_null()) {
    const json& d = j.at("density");
    if (!d.is_object() || !d.contains("kind") || !d.at("kind").is_string())
      throw UsageError("density: missing 'kind'");
    const std::string kind = d.at("kind").get<std::string>();
    DensitySpec ds;
    if (kind == "uniform") {
      only_keys(d, {"kind", "a", "b", "mass"}, "uniform density");
      ds.kind = DensityKind::Uniform;
      ds.a = number(d, "a", "uniform density");
      ds.b = number(d, "b", "uniform density");
    } else if (kind == "exp") {
      only_keys(d, {"kind", "rate", "loc", "side", "mass"}, "exp density");
      ds.kind = DensityKind::Exponential;
      ds.rate = number(d, "rate", "exp density");
      ds.loc = number_or(d, "loc", 0.0, "exp density");
      if (d.contains("side")) {
        const auto& s = d.at("side");
        if (!s.is_string() || (s != "positive" && s != "negative"))
          throw UsageError("exp density: 'side' is \"positive\" or \"negative\"");
        ds.positive_side = s == "positive";
      }
    } else if (kind == "table") {
      only_keys(d, {"kind", "xs", "fs", "mass"}, "table density");
      ds.kind = DensityKind::Table;
      ds.xs = number_list(d, "xs", "table density");
      ds.fs = number_list(d, "fs", "table density");
    } else {
      throw UsageError("density: unknown kind '" + kind + "'");
    }
    ds.mass = optional_number(d, "mass", "density");
    spec.density = ds;
  }
  return spec;
}

SimSettings parse_sim(const json& j) {
  only_keys(j, {"paths", "dt", "eps", "t_max", "seed", "threads"}, "simulation");
  SimSettings s;
  const double paths = number_or(j, "paths", static_cast<double>(s.paths), "simulation");
  if (!(paths >= 1.0)) throw UsageError("simulation: 'paths' must be >= 1");
  s.paths = static_cast<std::size_t>(paths);
  s.dt = number_or(j, "dt", s.dt, "simulation");
  s.eps = number_or(j, "eps", s.eps, "simulation");
  s.t_max = number_or(j, "t_max", s.t_max, "simulation");
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      throw UsageError("simulation: 'seed' must be unsigned");
    s.seed = v.get<std::uint64_t>();
  }
  s.threads = static_cast<unsigned>(number_or(j, "threads", s.threads, "simulation"));
  return s;
}

Scenario parse_scenario(const json& j) {
  only_keys(j, {"name", "model", "measure", "theorem", "scale", "simulation", "checks", "output_dir"},
            "scenario");
  if (!j.contains("model") || !j.contains("measure"))
    throw UsageError("scenario: 'model' and 'measure' are required");
  Scenario sc{.name = j.value("name", std::string("scenario")),
              .model = parse_model(j.at("model")),
              .measure = parse_measure(j.at("measure")),
              .theorem = 2,
              .scale_x_max = {},
              .scale_h = {},
              .sim = {},
              .checks = {},
              .out_dir = {}};
  const double th = number(j, "theorem", "scenario");
  if (th != 1.0 && th != 2.0 && th != 3.0) throw UsageError("scenario: 'theorem' is 1, 2 or 3");
  sc.theorem = static_cast<int>(th);
  if (j.contains("scale")) {
    only_keys(j.at("scale"), {"x_max", "h"}, "scale");
    sc.scale_x_max = optional_number(j.at("scale"), "x_max", "scale");
    sc.scale_h = optional_number(j.at("scale"), "h", "scale");
  }
  if (j.contains("simulation")) sc.sim = parse_sim(j.at("simulation"));
  if (j.contains("checks")) {
    const json& c = j.at("checks");
    only_keys(c, {"ks_max", "atom_se", "el_rel", "survival_max_dev", "censoring_max"}, "checks");
    sc.checks.ks_max = optional_number(c, "ks_max", "checks");
    sc.checks.atom_se = optional_number(c, "atom_se", "checks");
    sc.checks.el_rel = optional_number(c, "el_rel", "checks");
    sc.checks.survival_max_dev = optional_number(c, "survival_max_dev", "checks");
    sc.checks.censoring_max = optional_number(c, "censoring_max", "checks");
  }
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw UsageError("scenario: 'output_dir' must be a string");
    sc.out_dir = j.at("output_dir").get<std::string>();
  } else {
    sc.out_dir = std::filesystem::path("out") / sc.name;
  }
  return sc;
}

}  // namespace levyembed::cli
