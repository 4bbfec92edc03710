#include "qal/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qal::measure {

double collective_sigma_x(const DensityRegister& reg) {
  const long d = reg.dim();
  const ComplexMatrix& rho = reg.matrix();
  Complex acc = 0;
  for (long b = 0; b < d; ++b) acc += rho(b, d - 1 - b);
  return acc.real();
}

Snapshot snapshot(const eco::WorldState& world) {
  Snapshot snap;
  snap.time = world.clock;
  snap.num_register_qubits = world.reg.num_qubits();
  snap.collective_sigma_x = collective_sigma_x(world.reg);
  snap.individuals.reserve(world.individuals.size());
  for (const eco::Individual& ind : world.individuals) {
    IndividualReading r;
    r.id = ind.id;
    r.position = ind.position;
    r.alive = ind.alive;
    r.sigma_z_g = eco::sigma_z_g(world, ind);
    r.sigma_z_p = eco::sigma_z_p(world, ind);
    snap.individuals.push_back(r);
  }
  return snap;
}

int bin_of(double value, int bin_count) {
  if (bin_count < 3) throw std::invalid_argument("bin_of: bin_count must be >= 3");
  const long bin = std::lround((value + 1.0) * 0.5 * (bin_count - 1));
  return static_cast<int>(std::clamp(bin, 0L, static_cast<long>(bin_count - 1)));
}

double bin_center(int bin, int bin_count) {
  if (bin_count < 3) throw std::invalid_argument("bin_center: bin_count must be >= 3");
  return -1.0 + bin * 2.0 / (bin_count - 1);
}

HistogramSet::HistogramSet(int rows_, int cols_, int bins)
    : rows(rows_), cols(cols_), bin_count(bins) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("HistogramSet: grid must be >= 1x1");
  if (bin_count < 3) throw std::invalid_argument("HistogramSet: bin_count must be >= 3");
  position.assign(static_cast<size_t>(rows) * cols, 0);
  genotype.assign(bin_count, 0);
  phenotype.assign(bin_count, 0);
  coherence.assign(bin_count, 0);
}

void HistogramSet::add_positions(const Snapshot& snap) {
  for (const IndividualReading& r : snap.individuals) {
    if (!r.alive) continue;
    if (r.position.row < 0 || r.position.row >= rows || r.position.col < 0 ||
        r.position.col >= cols)
      throw std::invalid_argument("add_positions: reading outside the histogram grid");
    ++position[static_cast<size_t>(r.position.row) * cols + r.position.col];
  }
  ++snapshots_recorded;
}

void HistogramSet::accumulate(const Snapshot& snap, bool include_dead) {
  for (const IndividualReading& r : snap.individuals) {
    if (!r.alive && !include_dead) continue;
    ++genotype[bin_of(r.sigma_z_g, bin_count)];
    ++phenotype[bin_of(r.sigma_z_p, bin_count)];
    ++individuals_recorded;
  }
  ++coherence[bin_of(snap.collective_sigma_x, bin_count)];
}

void HistogramSet::merge(const HistogramSet& other) {
  if (rows != other.rows || cols != other.cols || bin_count != other.bin_count)
    throw std::invalid_argument("HistogramSet::merge: shape mismatch");
  for (size_t i = 0; i < position.size(); ++i) position[i] += other.position[i];
  for (int i = 0; i < bin_count; ++i) {
    genotype[i] += other.genotype[i];
    phenotype[i] += other.phenotype[i];
    coherence[i] += other.coherence[i];
  }
  realization_count += other.realization_count;
  snapshots_recorded += other.snapshots_recorded;
  individuals_recorded += other.individuals_recorded;
}

long HistogramSet::position_total() const {
  long total = 0;
  for (long v : position) total += v;
  return total;
}

std::vector<Peak> peak_report(const HistogramSet& hist, HistogramChannel channel,
                              double threshold_frac) {
  const std::vector<long>* bins = nullptr;
  switch (channel) {
    case HistogramChannel::kGenotype: bins = &hist.genotype; break;
    case HistogramChannel::kPhenotype: bins = &hist.phenotype; break;
    case HistogramChannel::kCoherence: bins = &hist.coherence; break;
  }
  long total = 0;
  for (long v : *bins) total += v;

  std::vector<Peak> peaks;
  const int n = hist.bin_count;
  for (int i = 0; i < n; ++i) {
    const long left = i > 0 ? (*bins)[i - 1] : 0;
    const long right = i < n - 1 ? (*bins)[i + 1] : 0;
    const long mass = (*bins)[i];
    if (mass > left && mass > right &&
        static_cast<double>(mass) >= threshold_frac * static_cast<double>(total))
      peaks.push_back({i, bin_center(i, n), mass});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    return a.bin < b.bin;
  });
  return peaks;
}

}  // namespace qal::measure
