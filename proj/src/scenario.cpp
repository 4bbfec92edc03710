#include "qal/scenario.hpp"

#include <numbers>

namespace qal::cli {

namespace {

SimConfig quiet_base() {
  // Single-individual closed-form setups: no stochastic dynamics at all.
  SimConfig cfg;
  cfg.rows = 1;
  cfg.cols = 1;
  cfg.defaults = {0.0, 0.0, 1.0, 0.0};
  cfg.dt = 0.1;
  cfg.total_time = 10.0;
  cfg.qubit_cap = 4;
  cfg.realizations = 1;
  cfg.interactions = false;
  cfg.outputs.timeseries = true;
  cfg.outputs.events = true;
  return cfg;
}

SimConfig fig3_dissipation() {
  SimConfig cfg = quiet_base();
  // Death must stay out of the observation window: threshold below the
  // smallest phenotype gap reached, 2(1-a) e^{-total} = 0.2 e^{-10}.
  cfg.epsilon = 1e-6;
  cfg.founders = {{{0.9, 0.0, 0.0}, {0, 0}}};
  cfg.qubit_cap = 2;
  return cfg;
}

SimConfig fig3_mutation() {
  SimConfig cfg = quiet_base();
  cfg.epsilon = 1e-6;
  cfg.founders = {{{0.7, 0.0, 0.0}, {0, 0}}};
  cfg.qubit_cap = 2;
  // One genotype flip mid-run: <sigma_z>_g jumps from 0.4 to
  // 0.4 cos(pi/2) = 0.
  cfg.scripted = {{3.0, eco::ScriptedEvent::Kind::kMutate, 0, -1, std::numbers::pi / 4}};
  return cfg;
}

SimConfig fig3_interaction() {
  SimConfig cfg = quiet_base();
  cfg.epsilon = 1e-9;
  cfg.founders = {{{0.8, 0.0, 0.0}, {0, 0}}, {{0.2, 0.0, 0.0}, {0, 0}}};
  // The scripted exchange at t = 2 is the only interaction: the per-step
  // pairing stays off.
  cfg.scripted = {{2.0, eco::ScriptedEvent::Kind::kInteract, 0, 1, 0.0}};
  return cfg;
}

SimConfig fig4a() {
  SimConfig cfg;
  cfg.rows = 8;
  cfg.cols = 8;
  cfg.defaults = {0.0, 0.0, 1.0, 0.0};
  cfg.founders = {{{0.9, 0.0, 0.0}, {4, 4}}};
  cfg.dt = 0.1;
  cfg.total_time = 10.0;
  cfg.epsilon = 0.01;
  cfg.qubit_cap = 8;
  cfg.realizations = 500;
  cfg.outputs.events = true;
  return cfg;
}

SimConfig fig4b() {
  SimConfig cfg = fig4a();
  // Mutation pressure splits the genotype histogram: spontaneous flips
  // reflect the founder line to -0.8, copy errors pile up at +1.
  cfg.defaults = {0.02, 0.05, 1.0, 0.2};
  return cfg;
}

SimConfig fig5a() {
  SimConfig cfg;
  cfg.rows = 8;
  cfg.cols = 8;
  cfg.defaults = {0.0, 0.0, 1.0, 0.0};
  // Same cell, mixed longevities: encounters are nearly certain.
  cfg.founders = {{{0.9, 0.0, 0.0}, {4, 4}},
                  {{0.7, 0.0, 0.0}, {4, 4}},
                  {{0.3, 0.0, 0.0}, {4, 4}},
                  {{0.1, 0.0, 0.0}, {4, 4}}};
  cfg.dt = 0.2;
  cfg.total_time = 10.0;
  cfg.epsilon = 0.01;
  cfg.qubit_cap = 8;
  cfg.realizations = 500;
  cfg.outputs.events = true;
  return cfg;
}

SimConfig fig5b() {
  SimConfig cfg = fig5a();
  // Opposite corners of a larger torus: encounters become rare within the
  // same horizon.
  cfg.rows = 16;
  cfg.cols = 16;
  cfg.founders = {{{0.9, 0.0, 0.0}, {0, 0}},
                  {{0.7, 0.0, 0.0}, {0, 8}},
                  {{0.3, 0.0, 0.0}, {8, 0}},
                  {{0.1, 0.0, 0.0}, {8, 8}}};
  return cfg;
}

SimConfig fig6() {
  SimConfig cfg;
  cfg.rows = 8;
  cfg.cols = 8;
  cfg.defaults = {0.01, 0.05, 1.0, 0.01};
  // Pure coherent founders: |+> and |->. Each spawns into a Bell pair, so
  // the register-wide sigma_x product starts at (+1)(-1) = -1.
  cfg.founders = {{{0.5, 0.5, 0.0}, {2, 2}}, {{0.5, -0.5, 0.0}, {5, 5}}};
  cfg.dt = 0.1;
  cfg.total_time = 10.0;
  cfg.epsilon = 0.01;
  cfg.qubit_cap = 8;
  cfg.realizations = 100;
  cfg.track_coherence = true;
  cfg.outputs.events = true;
  cfg.outputs.timeseries = true;
  return cfg;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "fig3-dissipation", "fig3-mutation", "fig3-interaction", "fig4a",
      "fig4b",            "fig5a",         "fig5b",            "fig6"};
  return names;
}

SimConfig scenario(const std::string& name) {
  if (name == "fig3-dissipation") return fig3_dissipation();
  if (name == "fig3-mutation") return fig3_mutation();
  if (name == "fig3-interaction") return fig3_interaction();
  if (name == "fig4a") return fig4a();
  if (name == "fig4b") return fig4b();
  if (name == "fig5a") return fig5a();
  if (name == "fig5b") return fig5b();
  if (name == "fig6") return fig6();
  std::string known;
  for (const std::string& n : scenario_names()) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

}  // namespace qal::cli
