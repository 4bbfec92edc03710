#include "qal/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qal::channels {

double DampingParams::probability() const {
  if (gamma < 0 || duration < 0)
    throw std::invalid_argument("DampingParams: gamma and duration must be >= 0");
  return -std::expm1(-gamma * duration);
}

void apply_damping(DensityRegister& reg, int target, const DampingParams& params) {
  if (target < 0 || target >= reg.num_qubits())
    throw std::invalid_argument("apply_damping: target out of range");
  const double p = params.probability();
  if (p == 0.0) return;
  const double keep = 1.0 - p;
  const double coh = std::sqrt(keep);

  const int n = reg.num_qubits();
  const long d = reg.dim();
  const long m = 1L << (n - 1 - target);
  ComplexMatrix& rho = reg.matrix();

  // In place: the (0,0)-class update reads the untouched (1,1) class, so it
  // runs first; the scale-only classes follow.
  for (long r = 0; r < d; ++r) {
    if (r & m) continue;
    for (long c = 0; c < d; ++c) {
      if (c & m) continue;
      rho(r, c) += p * rho(r | m, c | m);
    }
  }
  for (long r = 0; r < d; ++r) {
    const bool br = (r & m) != 0;
    for (long c = 0; c < d; ++c) {
      const bool bc = (c & m) != 0;
      if (br && bc)
        rho(r, c) *= keep;
      else if (br != bc)
        rho(r, c) *= coh;
    }
  }
}

double phenotype_decay_closed_form(double a, double gamma, double t) {
  if (a < 0 || a > 1) throw std::invalid_argument("phenotype_decay_closed_form: a must lie in [0,1]");
  if (gamma < 0 || t < 0)
    throw std::invalid_argument("phenotype_decay_closed_form: gamma and t must be >= 0");
  return 1.0 - 2.0 * std::exp(-gamma * t) * (1.0 - a);
}

DeathTime death_time(double a, double gamma, double epsilon) {
  if (a < 0 || a > 1) throw std::invalid_argument("death_time: a must lie in [0,1]");
  if (gamma < 0) throw std::invalid_argument("death_time: gamma must be >= 0");
  if (epsilon <= 0) throw std::invalid_argument("death_time: epsilon must be > 0");

  const double gap = 2.0 * (1.0 - a);  // 1 - <sigma_z>_p at birth
  if (gap <= epsilon) {
    // Threshold already met: exactly at the boundary counts as dying at 0.
    if (gap == epsilon) return {DeathOutcome::kDies, 0.0};
    return {DeathOutcome::kBornDead, 0.0};
  }
  if (gamma == 0.0)
    return {DeathOutcome::kImmortal, std::numeric_limits<double>::infinity()};
  return {DeathOutcome::kDies, std::log(gap / epsilon) / gamma};
}

void lindblad_rk4_evolve(DensityRegister& reg, const LindbladSpec& spec, double duration,
                         double step) {
  if (spec.target < 0 || spec.target >= reg.num_qubits())
    throw std::invalid_argument("lindblad_rk4_evolve: target out of range");
  if (spec.gamma < 0) throw std::invalid_argument("lindblad_rk4_evolve: gamma must be >= 0");
  if (duration < 0) throw std::invalid_argument("lindblad_rk4_evolve: duration must be >= 0");
  if (!(step > 0)) throw std::invalid_argument("lindblad_rk4_evolve: step must be > 0");
  if (duration == 0.0 || spec.gamma == 0.0) return;
  const long steps = std::max<long>(1, std::llround(duration / step));

  ComplexMatrix lower = ket_bra(0, 1);
  const int targets[] = {spec.target};
  const ComplexMatrix s = embed_unitary(lower, targets, reg.num_qubits());
  const ComplexMatrix sd = s.adjoint();
  const ComplexMatrix sds = sd * s;

  const double g = spec.gamma;
  auto deriv = [&](const ComplexMatrix& rho) -> ComplexMatrix {
    return g * (s * rho * sd - 0.5 * (sds * rho + rho * sds));
  };

  const double h = duration / static_cast<double>(steps);
  ComplexMatrix& rho = reg.matrix();
  for (long it = 0; it < steps; ++it) {
    const ComplexMatrix r1 = deriv(rho);
    const ComplexMatrix r2 = deriv(rho + (0.5 * h) * r1);
    const ComplexMatrix r3 = deriv(rho + (0.5 * h) * r2);
    const ComplexMatrix r4 = deriv(rho + h * r3);
    rho += (h / 6.0) * (r1 + 2.0 * r2 + 2.0 * r3 + r4);
  }
}

}  // namespace qal::channels
