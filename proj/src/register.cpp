#include "qal/register.hpp"

#include <algorithm>
#include <string>

namespace qal {
namespace {

// scatter[i] = full-index bits for local index i over the given targets.
std::vector<long> make_scatter(std::span<const int> targets, int num_qubits) {
  const int k = static_cast<int>(targets.size());
  std::vector<long> scatter(1L << k, 0);
  for (long i = 0; i < (1L << k); ++i) {
    long bits = 0;
    for (int j = 0; j < k; ++j)
      if ((i >> (k - 1 - j)) & 1) bits |= 1L << (num_qubits - 1 - targets[j]);
    scatter[i] = bits;
  }
  return scatter;
}

long mask_of(std::span<const int> targets, int num_qubits) {
  long m = 0;
  for (int q : targets) m |= 1L << (num_qubits - 1 - q);
  return m;
}

}  // namespace

DensityRegister::DensityRegister(int max_qubits) : max_qubits_(max_qubits) {
  if (max_qubits < 1) throw std::invalid_argument("DensityRegister: max_qubits must be >= 1");
  rho_ = ComplexMatrix::Ones(1, 1);
}

void DensityRegister::relabel(int qubit, QubitLabel label) {
  if (qubit < 0 || qubit >= num_qubits())
    throw std::invalid_argument("relabel: qubit out of range");
  labels_[qubit] = label;
}

void DensityRegister::append_qubits(int k, const std::vector<QubitLabel>& labels) {
  if (k < 0 || static_cast<int>(labels.size()) != k)
    throw std::invalid_argument("append_qubits: label count must match k");
  if (num_qubits() + k > max_qubits_)
    throw CapacityError("append_qubits: register cap of " + std::to_string(max_qubits_) +
                        " qubits exceeded");
  if (k == 0) return;
  const long old_dim = dim(), block = 1L << k;
  ComplexMatrix grown = ComplexMatrix::Zero(old_dim * block, old_dim * block);
  // New qubits are least significant; |0...0> keeps only the top-left slot
  // of each block.
  for (long r = 0; r < old_dim; ++r)
    for (long c = 0; c < old_dim; ++c) grown(r * block, c * block) = rho_(r, c);
  rho_ = std::move(grown);
  labels_.insert(labels_.end(), labels.begin(), labels.end());
}

void DensityRegister::append_state(const ComplexMatrix& rho1, QubitLabel label) {
  if (rho1.rows() != 2 || rho1.cols() != 2)
    throw std::invalid_argument("append_state: state must be 2x2");
  if (std::abs(rho1.trace() - Complex(1.0)) > kStateTol)
    throw std::invalid_argument("append_state: state must have unit trace");
  if (num_qubits() + 1 > max_qubits_)
    throw CapacityError("append_state: register cap of " + std::to_string(max_qubits_) +
                        " qubits exceeded");
  rho_ = kron(rho_, rho1);
  labels_.push_back(label);
}

void DensityRegister::check_targets(std::span<const int> targets, const char* who) const {
  if (targets.empty()) throw std::invalid_argument(std::string(who) + ": no targets");
  std::vector<bool> seen(num_qubits(), false);
  for (int q : targets) {
    if (q < 0 || q >= num_qubits())
      throw std::invalid_argument(std::string(who) + ": qubit " + std::to_string(q) +
                                  " out of range");
    if (seen[q]) throw std::invalid_argument(std::string(who) + ": duplicate qubit");
    seen[q] = true;
  }
}

void DensityRegister::apply_unitary(const ComplexMatrix& u, std::span<const int> targets) {
  check_targets(targets, "apply_unitary");
  const int k = static_cast<int>(targets.size());
  const long locdim = 1L << k;
  if (u.rows() != locdim || u.cols() != locdim)
    throw std::invalid_argument("apply_unitary: matrix dimension does not match target count");
  if (unitarity_defect(u) > kStateTol)
    throw std::invalid_argument("apply_unitary: matrix is not unitary");

  const int n = num_qubits();
  const long d = dim();
  const auto scatter = make_scatter(targets, n);
  const long tmask = mask_of(targets, n);

  ComplexMatrix tmp(d, d);
  std::vector<Complex> vec(locdim);
  // Row pass: tmp = U rho.
  for (long rest = 0; rest < d; ++rest) {
    if (rest & tmask) continue;
    for (long c = 0; c < d; ++c) {
      for (long i = 0; i < locdim; ++i) vec[i] = rho_(rest | scatter[i], c);
      for (long i = 0; i < locdim; ++i) {
        Complex acc = 0;
        for (long j = 0; j < locdim; ++j) acc += u(i, j) * vec[j];
        tmp(rest | scatter[i], c) = acc;
      }
    }
  }
  // Column pass: rho = tmp U^dagger.
  for (long rest = 0; rest < d; ++rest) {
    if (rest & tmask) continue;
    for (long r = 0; r < d; ++r) {
      for (long j = 0; j < locdim; ++j) vec[j] = tmp(r, rest | scatter[j]);
      for (long i = 0; i < locdim; ++i) {
        Complex acc = 0;
        for (long j = 0; j < locdim; ++j) acc += vec[j] * std::conj(u(i, j));
        rho_(r, rest | scatter[i]) = acc;
      }
    }
  }
}

ComplexMatrix DensityRegister::partial_trace(std::span<const int> keep) const {
  check_targets(keep, "partial_trace");
  const int n = num_qubits();
  const int k = static_cast<int>(keep.size());
  const auto kscatter = make_scatter(keep, n);
  const long kmask = mask_of(keep, n);

  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!(kmask & (1L << (n - 1 - q)))) traced.push_back(q);
  const auto tscatter = make_scatter(traced, n);

  const long kdim = 1L << k;
  ComplexMatrix out = ComplexMatrix::Zero(kdim, kdim);
  for (long i = 0; i < kdim; ++i)
    for (long j = 0; j < kdim; ++j) {
      Complex acc = 0;
      for (long t : tscatter) acc += rho_(kscatter[i] | t, kscatter[j] | t);
      out(i, j) = acc;
    }
  return out;
}

double DensityRegister::expect(const ComplexMatrix& obs, std::span<const int> targets) const {
  check_targets(targets, "expect");
  const int k = static_cast<int>(targets.size());
  const long locdim = 1L << k;
  if (obs.rows() != locdim || obs.cols() != locdim)
    throw std::invalid_argument("expect: observable dimension does not match target count");
  if (max_abs_diff(obs, obs.adjoint()) > kStateTol)
    throw std::invalid_argument("expect: observable is not Hermitian");

  const int n = num_qubits();
  const long d = dim();
  const auto scatter = make_scatter(targets, n);
  const long tmask = mask_of(targets, n);

  // Tr(rho O) = sum over rest, i, j of rho(rest|s_i, rest|s_j) O(j, i).
  Complex acc = 0;
  for (long rest = 0; rest < d; ++rest) {
    if (rest & tmask) continue;
    for (long i = 0; i < locdim; ++i)
      for (long j = 0; j < locdim; ++j) acc += rho_(rest | scatter[i], rest | scatter[j]) * obs(j, i);
  }
  return acc.real();
}

void DensityRegister::remove_qubits(std::span<const int> discard) {
  if (discard.empty()) return;
  check_targets(discard, "remove_qubits");
  if (static_cast<int>(discard.size()) == num_qubits())
    throw std::invalid_argument("remove_qubits: cannot empty the register");

  const int n = num_qubits();
  long dmask = mask_of(discard, n);
  std::vector<int> keep;
  for (int q = 0; q < n; ++q)
    if (!(dmask & (1L << (n - 1 - q)))) keep.push_back(q);

  rho_ = partial_trace(keep);
  std::vector<QubitLabel> new_labels;
  new_labels.reserve(keep.size());
  for (int q : keep) new_labels.push_back(labels_[q]);
  labels_ = std::move(new_labels);
}

void DensityRegister::reset_qubit(int qubit) {
  const int targets[] = {qubit};
  check_targets(targets, "reset_qubit");
  const int n = num_qubits();
  const long d = dim();
  const long m = 1L << (n - 1 - qubit);
  // Fold the qubit-1 population into qubit 0, then clear everything that
  // still references the qubit being reset.
  for (long r = 0; r < d; ++r) {
    if (r & m) continue;
    for (long c = 0; c < d; ++c) {
      if (c & m) continue;
      rho_(r, c) += rho_(r | m, c | m);
    }
  }
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c)
      if ((r & m) || (c & m)) rho_(r, c) = 0.0;
}

RegisterDiagnostics DensityRegister::validate(bool check_positivity) const {
  RegisterDiagnostics diag;
  diag.hermiticity_defect = max_abs_diff(rho_, rho_.adjoint());
  diag.trace_defect = std::abs(rho_.trace() - Complex(1.0));
  if (check_positivity) {
    Eigen::MatrixXcd sym = 0.5 * (Eigen::MatrixXcd(rho_) + Eigen::MatrixXcd(rho_).adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
    diag.min_eigenvalue = solver.eigenvalues().minCoeff();
  }
  return diag;
}

}  // namespace qal
