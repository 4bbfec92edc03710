#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qal/ecosystem.hpp"

namespace qal::cli {

// Invalid or malformed configuration; the message names the offending key
// and the constraint it broke. Maps to process exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FounderSpec {
  eco::Genotype genotype;
  eco::Cell cell;
};

// Rectangular override of the default region parameters, bounds inclusive.
// Later rectangles win where they overlap.
struct RegionRect {
  int row0 = 0, col0 = 0, row1 = 0, col1 = 0;
  eco::RegionParams params;
};

struct OutputSelection {
  bool histograms = true;
  bool timeseries = false;
  bool events = false;
};

struct SimConfig {
  int rows = 8, cols = 8;
  eco::RegionParams defaults;
  std::vector<RegionRect> regions;
  std::vector<FounderSpec> founders;
  double dt = 0.1;
  double total_time = 10.0;
  double epsilon = 0.01;
  int qubit_cap = kDefaultQubitCap;
  std::uint64_t seed = 1;
  long realizations = 1;
  eco::MoveProbs move;
  bool interactions = true;
  bool recycle_dead = false;
  bool trace_out_dead = false;
  bool include_dead_in_histograms = true;
  bool track_coherence = false;
  int bin_count = 41;
  double peak_threshold = 0.01;
  OutputSelection outputs;
  std::vector<eco::ScriptedEvent> scripted;

  long steps() const;
};

// Parses and fully validates a JSON config document. Unknown keys are
// errors; every message names the key path and the violated constraint.
SimConfig parse_config(const std::string& text);

SimConfig load_config_file(const std::string& path);

// Canonical form: every field explicit, keys in stable order. Parsing the
// result reproduces the config exactly.
std::string serialize_config(const SimConfig& config);

// FNV-1a over the canonical serialization, 16 hex digits.
std::string config_hash(const SimConfig& config);

eco::GridSpec make_grid(const SimConfig& config);
eco::WorldParams make_world_params(const SimConfig& config);

// Builds the world for one ensemble member and spawns the founders.
eco::WorldState make_world(const SimConfig& config, std::uint64_t realization_seed);

}  // namespace qal::cli
