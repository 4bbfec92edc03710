#pragma once

#include "qal/ecosystem.hpp"
#include "qal/matrix.hpp"
#include "qal/rng.hpp"

namespace testsupport {

// Random density matrix: normalized Ginibre product, full rank with
// probability 1.
inline qal::ComplexMatrix random_density(qal::Rng& rng, long dim) {
  qal::ComplexMatrix g(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) g(r, c) = qal::Complex(rng.gaussian(), rng.gaussian());
  qal::ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

// Haar-ish random unitary via QR of a Ginibre matrix.
inline qal::ComplexMatrix random_unitary(qal::Rng& rng, long dim) {
  qal::ComplexMatrix g(dim, dim);
  for (long r = 0; r < dim; ++r)
    for (long c = 0; c < dim; ++c) g(r, c) = qal::Complex(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  return qal::ComplexMatrix(q);
}

// World with every stochastic phase switched off: movement on a 1x1 grid,
// no replication, no mutation. gamma and the rest are explicit.
inline qal::eco::WorldState quiet_world(const qal::eco::RegionParams& region, double dt,
                                        double epsilon, int cap, std::uint64_t seed,
                                        int rows = 1, int cols = 1) {
  qal::eco::GridSpec grid(rows, cols, region);
  qal::eco::WorldParams params;
  params.dt = dt;
  params.epsilon = epsilon;
  params.qubit_cap = cap;
  params.interactions = false;
  return qal::eco::WorldState(grid, params, seed);
}

}  // namespace testsupport
