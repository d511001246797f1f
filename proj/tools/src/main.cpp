#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "commands.hpp"

using namespace levyembed::cli;

int main(int argc, char** argv) {
  CLI::App app{"Skorokhod embeddings for spectrally negative Levy processes"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string log_level = "info";
  app.add_option("--seed", seed, "Random seed for simulations");
  app.add_option("--threads", threads, "Worker threads for simulations");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  ScaleTableArgs st;
  auto* scale = app.add_subcommand("scale-table", "Tabulate W, W', Wbar and W*W");
  scale->set_help_flag("--help", "Print this help message and exit");
  scale->add_option("--model", st.model)->required()->check(CLI::ExistingFile);
  scale->add_option("--q", st.q, "Killing rate; adds a Wq column when positive");
  scale->add_option("--xmax", st.x_max);
  scale->add_option("--h", st.h);
  scale->add_option("--out", st.out)->required();

  ExcursionTableArgs ex;
  auto* exc = app.add_subcommand("excursion-table", "Excursion measure of sup/inf events");
  exc->add_option("--model", ex.model)->required()->check(CLI::ExistingFile);
  exc->add_option("--eta-grid", ex.eta_grid, "a:b:n or comma list");
  exc->add_option("--delta-grid", ex.delta_grid, "a:b:n or comma list");
  exc->add_option("--out", ex.out)->required();

  BoundaryArgs bd;
  auto* bnd = app.add_subcommand("boundary", "Compute the stopping boundary");
  bnd->add_option("--model", bd.model)->required()->check(CLI::ExistingFile);
  bnd->add_option("--measure", bd.measure)->required()->check(CLI::ExistingFile);
  bnd->add_option("--theorem", bd.theorem)->required()->check(CLI::IsMember({1, 2, 3}));
  bnd->add_option("--out", bd.out)->required();
  bnd->add_option("--law", bd.law, "Also write the law of L_T");

  SimulateArgs sm;
  auto* sim = app.add_subcommand("simulate", "Simulate the stopping rule");
  sim->add_option("--model", sm.model)->required()->check(CLI::ExistingFile);
  sim->add_option("--measure", sm.measure)->required()->check(CLI::ExistingFile);
  sim->add_option("--theorem", sm.theorem)->required()->check(CLI::IsMember({1, 2, 3}));
  sim->add_option("--paths", sm.sim.paths)->check(CLI::PositiveNumber);
  sim->add_option("--dt", sm.sim.dt)->check(CLI::PositiveNumber);
  sim->add_option("--eps", sm.sim.eps)->check(CLI::PositiveNumber);
  sim->add_option("--t-max", sm.sim.t_max, "0 picks a default horizon");
  sim->add_option("--out", sm.out, "Report JSON");
  sim->add_option("--samples", sm.samples, "Per-path CSV");

  ValidateArgs vd;
  auto* val = app.add_subcommand("validate", "Re-validate a samples file");
  val->add_option("--model", vd.model)->required()->check(CLI::ExistingFile);
  val->add_option("--measure", vd.measure)->required()->check(CLI::ExistingFile);
  val->add_option("--theorem", vd.theorem)->required()->check(CLI::IsMember({1, 2, 3}));
  val->add_option("--samples", vd.samples)->required()->check(CLI::ExistingFile);
  val->add_option("--out", vd.out, "Report JSON; stdout when omitted");

  RunArgs rn;
  auto* run = app.add_subcommand("run", "Run a scenario end to end");
  run->add_option("scenario", rn.scenario)->required()->check(CLI::ExistingFile);
  run->add_option("--paths", rn.paths)->check(CLI::PositiveNumber);
  run->add_option("--out-dir", rn.out_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  spdlog::set_level(spdlog::level::from_str(log_level));
  spdlog::set_pattern("[%l] %v");

  if (seed) sm.sim.seed = *seed;
  if (threads) sm.sim.threads = *threads;
  rn.seed = seed;
  rn.threads = threads;

  if (*scale) return cmd_scale_table(st);
  if (*exc) return cmd_excursion_table(ex);
  if (*bnd) return cmd_boundary(bd);
  if (*sim) return cmd_simulate(sm);
  if (*val) return cmd_validate(vd);
  return cmd_run(rn);
}
