#pragma once

#include <array>
#include <string>

#include "qal/matrix.hpp"

namespace qal::gates {

// 4x4 controlled-NOT; the first listed qubit is the control. Used as the
// perfect clone gate (genotype -> fresh |0> target copies the classical
// content, not the amplitudes).
ComplexMatrix cnot();

// Single-qubit mutation M(theta) = [[cos t, sin t], [sin t, -cos t]].
// Involutory; conjugating a state scales <sigma_z> by cos(2 theta).
ComplexMatrix mutation_m(double theta);

// Imperfect clone U_M(theta): identity plus a rank-one correction on the
// control-1 block. U_M(0) = CNOT, U_M(pi) = identity.
ComplexMatrix imperfect_clone(double theta);

// 16x16 conditional phenotype exchange on qubits (g1, p1, g2, p2): swaps the
// two phenotypes exactly when the genotypes differ in the computational
// basis. Block-diagonal in (g1, g2), so genotype populations and sigma_z
// expectations are exactly preserved; genotype coherences are not, in
// general. Built literally from its projector decomposition.
ComplexMatrix interaction_ui();

// 8x8 doubly-controlled NOT (both controls before the target).
ComplexMatrix toffoli();

enum class GateKind { kCnot, kMutation, kImperfectClone, kInteraction, kToffoli };

// Value-typed gate description: what the event log records and what
// replication passes around.
struct GateSpec {
  GateKind kind = GateKind::kCnot;
  double theta = 0.0;

  int arity() const;
  ComplexMatrix matrix() const;
  std::string name() const;
};

struct RelabelResult {
  bool found = false;
  // permutation[b] = basis state that |b> is relabeled to (R|b> = |perm[b]>).
  std::array<int, 16> permutation{};
  double defect = 0.0;  // max |R^dag U_I R - I (x) toffoli| for the returned R
};

// Searches the basis relabelings that fix every state untouched by both
// gates and maps swap supports onto swap supports, in a deterministic order;
// returns the first one conjugating U_I into I (x) toffoli within
// kAlgebraicTol.
RelabelResult verify_ui_toffoli_equivalence();

}  // namespace qal::gates
