#include "qal/matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qal {

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix ket_bra(int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1)
    throw std::invalid_argument("ket_bra: indices must be 0 or 1");
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols();
  const Eigen::Index br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
  ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.rows());
  return max_abs_diff(u * u.adjoint(), id);
}

ComplexMatrix embed_unitary(const ComplexMatrix& op, std::span<const int> targets,
                            int num_qubits) {
  const int k = static_cast<int>(targets.size());
  if (k == 0 || num_qubits <= 0 || k > num_qubits)
    throw std::invalid_argument("embed_unitary: bad target count");
  const long locdim = 1L << k;
  if (op.rows() != locdim || op.cols() != locdim)
    throw std::invalid_argument("embed_unitary: operator dimension does not match target count");
  std::vector<bool> seen(num_qubits, false);
  for (int q : targets) {
    if (q < 0 || q >= num_qubits)
      throw std::invalid_argument("embed_unitary: target " + std::to_string(q) + " out of range");
    if (seen[q]) throw std::invalid_argument("embed_unitary: duplicate target");
    seen[q] = true;
  }

  const long dim = 1L << num_qubits;
  // scatter[i]: full-index bits contributed by local index i.
  std::vector<long> scatter(locdim, 0);
  for (long i = 0; i < locdim; ++i) {
    long bits = 0;
    for (int j = 0; j < k; ++j)
      if ((i >> (k - 1 - j)) & 1) bits |= 1L << (num_qubits - 1 - targets[j]);
    scatter[i] = bits;
  }
  long tmask = 0;
  for (int q : targets) tmask |= 1L << (num_qubits - 1 - q);

  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (long rest = 0; rest < dim; ++rest) {
    if (rest & tmask) continue;
    for (long i = 0; i < locdim; ++i)
      for (long j = 0; j < locdim; ++j)
        out(rest | scatter[i], rest | scatter[j]) = op(i, j);
  }
  return out;
}

}  // namespace qal
