#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qal/config.hpp"
#include "qal/measure.hpp"

namespace qal::cli {

// Per-member outcome counters; index order matches realization index.
struct RealizationStats {
  long interactions = 0;
  long births = 0;  // founders included
  long deaths = 0;
  long mutations = 0;
  long skipped_births = 0;
  int final_total = 0;
  int final_live = 0;
};

struct RunManifest {
  std::string version;
  std::string config_hash;
  std::uint64_t master_seed = 0;
  long realizations = 0;
  int threads = 1;
  std::string started_at;   // wall clock; informational only, not part of
  std::string finished_at;  // the reproducibility contract
  std::vector<std::uint64_t> realization_seeds;

  std::string to_text() const;
};

struct EnsembleResult {
  measure::HistogramSet histograms;
  std::vector<RealizationStats> stats;
  std::string events_text;      // filled when outputs.events
  std::string timeseries_csv;   // filled when outputs.timeseries
  std::string coherence_csv;    // filled when track_coherence
  RunManifest manifest;
};

// Runs the ensemble with a worker pool. Every realization derives its own
// seed from (config.seed, index) and results merge in index order, so the
// outcome is byte-identical for any thread count.
EnsembleResult run_ensemble(const SimConfig& config, int threads);

// Writes manifest.txt plus the selected outputs into out_dir (created if
// missing). Returns the list of files written, relative to out_dir.
std::vector<std::string> write_outputs(const EnsembleResult& result, const SimConfig& config,
                                       const std::string& out_dir);

}  // namespace qal::cli
