#include <cstdio>
#include <exception>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "qal/channels.hpp"
#include "qal/ensemble.hpp"
#include "qal/rng.hpp"
#include "qal/scenario.hpp"
#include "qal/version.hpp"

namespace {

struct CommonFlags {
  std::uint64_t seed = 0;
  bool seed_set = false;
  long realizations = 0;
  bool realizations_set = false;
  std::string out_dir = "out";
  int threads = 0;  // 0 = hardware default
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "Master seed (overrides the config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--realizations", flags.realizations,
                  "Ensemble size (overrides the config)")
      ->each([&flags](const std::string&) { flags.realizations_set = true; })
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", flags.out_dir, "Output directory (default: out)");
  cmd->add_option("--threads", flags.threads, "Worker threads (default: hardware)")
      ->check(CLI::NonNegativeNumber);
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

int run_config(qal::cli::SimConfig cfg, const CommonFlags& flags) {
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.realizations_set) cfg.realizations = flags.realizations;
  const qal::cli::EnsembleResult result =
      qal::cli::run_ensemble(cfg, effective_threads(flags.threads));
  const std::vector<std::string> files =
      qal::cli::write_outputs(result, cfg, flags.out_dir);

  long interactions = 0, births = 0, deaths = 0;
  for (const qal::cli::RealizationStats& s : result.stats) {
    interactions += s.interactions;
    births += s.births;
    deaths += s.deaths;
  }
  std::printf("realizations=%ld births=%ld deaths=%ld interactions=%ld\n",
              result.manifest.realizations, births, deaths, interactions);
  std::printf("wrote %zu files to %s\n", files.size(), flags.out_dir.c_str());
  return 0;
}

// Cross-validates the closed-form damping channel against brute-force RK4
// integration of the master equation on random registers.
int run_oracle(int qubits, int cases, double gamma_t, double step, std::uint64_t seed) {
  qal::Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < cases; ++k) {
    const long dim = 1L << qubits;
    qal::ComplexMatrix g(dim, dim);
    for (long r = 0; r < dim; ++r)
      for (long c = 0; c < dim; ++c) g(r, c) = qal::Complex(rng.gaussian(), rng.gaussian());
    qal::ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();

    const int target = static_cast<int>(rng.below(qubits));
    qal::DensityRegister exact(qubits), numeric(qubits);
    std::vector<qal::QubitLabel> labels(qubits);
    exact.append_qubits(qubits, labels);
    numeric.append_qubits(qubits, labels);
    exact.matrix() = rho;
    numeric.matrix() = rho;

    qal::channels::apply_damping(exact, target, {1.0, gamma_t});
    qal::channels::lindblad_rk4_evolve(numeric, {target, 1.0}, gamma_t, step);

    const double diff = qal::max_abs_diff(exact.matrix(), numeric.matrix());
    worst = std::max(worst, diff);
    std::printf("case %2d: target=%d entrywise=%.3e\n", k, target, diff);
  }
  const bool ok = worst <= 1e-6;
  std::printf("%s worst=%.3e (bound 1e-06, %d cases, %d qubits, gamma*t=%g, step=%g)\n",
              ok ? "PASS" : "FAIL", worst, cases, qubits, gamma_t, step);
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qalife: dissipative quantum ecosystem simulator"};
  app.set_version_flag("--version", std::string(qal::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string scenario_name;
  CommonFlags run_flags, scen_flags;
  bool emit_config = false;

  CLI::App* run = app.add_subcommand("run", "Run an ensemble from a config file");
  run->add_option("config", config_path, "Path to a JSON config")->required();
  add_common(run, run_flags);

  CLI::App* scen = app.add_subcommand("scenario", "Run a named preset");
  scen->add_option("name", scenario_name, "Preset name")->required();
  scen->add_flag("--emit-config", emit_config,
                 "Print the preset's canonical config instead of running");
  add_common(scen, scen_flags);

  std::string validate_path;
  CLI::App* val = app.add_subcommand("validate", "Parse and validate a config file");
  val->add_option("config", validate_path, "Path to a JSON config")->required();

  int oracle_qubits = 3, oracle_cases = 20;
  double oracle_gamma_t = 1.0, oracle_step = 1e-3;
  std::uint64_t oracle_seed = 12345;
  CLI::App* orc = app.add_subcommand("oracle", "Damping-channel cross-validation suite");
  orc->add_option("--qubits", oracle_qubits, "Register size")->check(CLI::Range(1, 6));
  orc->add_option("--cases", oracle_cases, "Number of random registers")
      ->check(CLI::PositiveNumber);
  orc->add_option("--gamma-t", oracle_gamma_t, "Damping exposure");
  orc->add_option("--step", oracle_step, "RK4 step size");
  orc->add_option("--seed", oracle_seed, "Seed for the random registers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (run->parsed()) return run_config(qal::cli::load_config_file(config_path), run_flags);
    if (scen->parsed()) {
      qal::cli::SimConfig cfg = qal::cli::scenario(scenario_name);
      if (emit_config) {
        std::fputs(qal::cli::serialize_config(cfg).c_str(), stdout);
        return 0;
      }
      return run_config(cfg, scen_flags);
    }
    if (val->parsed()) {
      const qal::cli::SimConfig cfg = qal::cli::load_config_file(validate_path);
      std::printf("ok: %s (hash %s, %ld realizations, %ld steps)\n", validate_path.c_str(),
                  qal::cli::config_hash(cfg).c_str(), cfg.realizations, cfg.steps());
      return 0;
    }
    if (orc->parsed())
      return run_oracle(oracle_qubits, oracle_cases, oracle_gamma_t, oracle_step, oracle_seed);
  } catch (const qal::cli::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
