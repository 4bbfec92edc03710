#pragma once

#include <vector>

#include "qal/ecosystem.hpp"

namespace qal::measure {

struct IndividualReading {
  int id = -1;
  eco::Cell position{};
  bool alive = true;
  double sigma_z_g = 0.0;
  double sigma_z_p = 0.0;
};

struct Snapshot {
  double time = 0.0;
  int num_register_qubits = 0;
  std::vector<IndividualReading> individuals;  // id order, dead included
  double collective_sigma_x = 0.0;  // <sigma_x tensored over the register>
};

Snapshot snapshot(const eco::WorldState& world);

// <sigma_x^(x) n> over the whole register: the sum of the anti-diagonal of
// rho. Real for Hermitian states; the imaginary part is discarded.
double collective_sigma_x(const DensityRegister& reg);

int bin_of(double value, int bin_count);          // clamped to [0, bin_count)
double bin_center(int bin, int bin_count);        // -1 + bin * 2 / (bins - 1)

// Accumulated ensemble statistics. Positions count live individuals every
// step; the value histograms bin sigma_z and collective-coherence readings.
struct HistogramSet {
  int rows = 0;
  int cols = 0;
  int bin_count = 41;
  std::vector<long> position;   // rows*cols, row-major
  std::vector<long> genotype;   // bin_count
  std::vector<long> phenotype;  // bin_count
  std::vector<long> coherence;  // bin_count
  long realization_count = 0;
  long snapshots_recorded = 0;
  long individuals_recorded = 0;

  HistogramSet() = default;
  HistogramSet(int rows, int cols, int bin_count);

  // Position counts only (per-step path accumulation), live individuals.
  void add_positions(const Snapshot& snap);

  // Value histograms (typically once per realization, at the end).
  void accumulate(const Snapshot& snap, bool include_dead = true);

  void merge(const HistogramSet& other);  // shapes must match

  long position_total() const;
};

struct Peak {
  int bin = 0;
  double center = 0.0;
  long mass = 0;
};

enum class HistogramChannel { kGenotype, kPhenotype, kCoherence };

// Bins strictly above both neighbors (edges compare against zero) carrying
// at least threshold_frac of the channel's total mass; sorted by mass
// descending, then bin ascending.
std::vector<Peak> peak_report(const HistogramSet& hist, HistogramChannel channel,
                              double threshold_frac = 0.01);

}  // namespace qal::measure
