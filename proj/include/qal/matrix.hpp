#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

namespace qal {

using Complex = std::complex<double>;

// Row-major so the flat (row, col) scans in the channel and gate kernels
// walk memory contiguously.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Tolerance ladder shared across the library: algebraic identities must hold
// to kAlgebraicTol, state validity (trace, hermiticity) to kStateTol, and
// long-run drift checks to kDriftTol.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kStateTol = 1e-10;
inline constexpr double kDriftTol = 1e-9;

// Register growth is capped; 12 qubits (dim 4096, ~268 MB dense) is the
// default ceiling for a desktop-class machine.
inline constexpr int kDefaultQubitCap = 12;

ComplexMatrix identity2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix ket_bra(int i, int j);  // 2x2 |i><j|, i,j in {0,1}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise |a - b|; matrices must share dimensions.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest entrywise |u*u^dagger - I|.
double unitarity_defect(const ComplexMatrix& u);

// Expands op (2^k x 2^k) acting on `targets` of an n-qubit register to the
// full 2^n x 2^n matrix. Qubit 0 is the most significant bit of a basis
// index; targets[0] is the most significant bit of op's local index.
// Intended for small n (tests, oracles); the register applies gates without
// materializing this.
ComplexMatrix embed_unitary(const ComplexMatrix& op, std::span<const int> targets,
                            int num_qubits);

}  // namespace qal
