#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qal/matrix.hpp"

namespace qal {

// Thrown when an append would push the register past its qubit cap. Callers
// that can degrade gracefully (the ecosystem skips the birth and logs it)
// catch this specifically.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QubitRole { kGenotype, kPhenotype };

struct QubitLabel {
  int owner = -1;  // individual id, -1 for unowned ancilla
  QubitRole role = QubitRole::kGenotype;
};

struct RegisterDiagnostics {
  double hermiticity_defect = 0.0;
  double trace_defect = 0.0;
  std::optional<double> min_eigenvalue;  // set when positivity was checked

  bool ok(bool require_positive = false) const {
    if (hermiticity_defect > kStateTol || trace_defect > kStateTol) return false;
    if (require_positive && min_eigenvalue && *min_eigenvalue < -kStateTol) return false;
    return true;
  }
};

// A dense density matrix over an ordered list of labeled qubits. Qubit 0 is
// the most significant bit of a basis index. The empty register is the 1x1
// matrix [1].
class DensityRegister {
 public:
  explicit DensityRegister(int max_qubits = kDefaultQubitCap);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  int max_qubits() const { return max_qubits_; }
  long dim() const { return 1L << num_qubits(); }

  const ComplexMatrix& matrix() const { return rho_; }
  ComplexMatrix& matrix() { return rho_; }

  const std::vector<QubitLabel>& labels() const { return labels_; }
  void relabel(int qubit, QubitLabel label);

  // Appends k qubits, each in |0><0|. Throws CapacityError past the cap.
  void append_qubits(int k, const std::vector<QubitLabel>& labels);

  // Appends one qubit in the given single-qubit state (2x2, trace 1).
  void append_state(const ComplexMatrix& rho1, QubitLabel label);

  // rho -> U rho U^dagger with u acting on `targets` in listed order
  // (targets[0] = most significant local bit). Does not materialize the
  // embedded matrix.
  void apply_unitary(const ComplexMatrix& u, std::span<const int> targets);

  // Reduced state over `keep` in listed order; all other qubits traced out.
  ComplexMatrix partial_trace(std::span<const int> keep) const;

  // Tr(rho * O_embedded) for a Hermitian observable on `targets`. The
  // imaginary part of the raw trace is discarded (it stays below kDriftTol
  // for valid states; validate() is the guard for that).
  double expect(const ComplexMatrix& obs, std::span<const int> targets) const;

  // Traces out `discard` and renumbers the remaining qubits, preserving
  // their relative order. Labels follow.
  void remove_qubits(std::span<const int> discard);

  // Trace-preserving reset of one qubit to |0><0| (discard-and-replace
  // channel). Qubit recycling depends on this.
  void reset_qubit(int qubit);

  RegisterDiagnostics validate(bool check_positivity = false) const;

 private:
  void check_targets(std::span<const int> targets, const char* who) const;

  int max_qubits_;
  std::vector<QubitLabel> labels_;
  ComplexMatrix rho_;
};

}  // namespace qal
