#pragma once

#include "qal/register.hpp"

namespace qal::channels {

struct DampingParams {
  double gamma = 1.0;     // decay rate, >= 0
  double duration = 0.0;  // evolution time, >= 0

  // Excited-state decay probability 1 - e^{-gamma * duration}.
  double probability() const;
};

// Exact amplitude damping of one qubit: populations relax toward |0>,
// coherences shrink by sqrt(1 - p). Single pass over the matrix; applying
// it to distinct qubits commutes, and consecutive durations compose exactly
// (semigroup), so stepping never accumulates channel error beyond float
// rounding.
void apply_damping(DensityRegister& reg, int target, const DampingParams& params);

// <sigma_z> of a phenotype built by cloning a genotype with ground
// population a, after damping for time t: 1 - 2 e^{-gamma t} (1 - a).
double phenotype_decay_closed_form(double a, double gamma, double t);

enum class DeathOutcome {
  kDies,      // threshold reached at a finite positive time
  kBornDead,  // threshold already met at birth
  kImmortal,  // threshold never reached (gamma == 0 or epsilon out of reach)
};

struct DeathTime {
  DeathOutcome outcome = DeathOutcome::kDies;
  double time = 0.0;  // +infinity when immortal
};

// Solves 1 - <sigma_z>_p(t) = epsilon for the damped phenotype of a
// genotype with ground population a: t_d = ln(2 (1 - a) / epsilon) / gamma.
DeathTime death_time(double a, double gamma, double epsilon);

struct LindbladSpec {
  int target = 0;
  double gamma = 1.0;
};

// Fixed-step RK4 integration of the damping master equation
// d rho / dt = gamma (s rho s^dag - 1/2 {s^dag s, rho}), s = |0><1| on the
// target. step is the nominal step size; the duration is divided into the
// nearest whole number of equal steps. Cross-validation oracle for
// apply_damping; O(steps * dim^3), keep registers small.
void lindblad_rk4_evolve(DensityRegister& reg, const LindbladSpec& spec, double duration,
                         double step);

}  // namespace qal::channels
