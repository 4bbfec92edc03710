#include <doctest.h>

#include <numbers>

#include "qal/gates.hpp"
#include "qal/register.hpp"
#include "test_support.hpp"

using namespace qal;

namespace {

DensityRegister random_register(Rng& rng, int qubits, int cap = kDefaultQubitCap) {
  DensityRegister reg(cap);
  reg.append_qubits(qubits, std::vector<QubitLabel>(qubits));
  reg.matrix() = testsupport::random_density(rng, 1L << qubits);
  return reg;
}

}  // namespace

TEST_CASE("fresh register is the trivial state") {
  DensityRegister reg(4);
  CHECK(reg.num_qubits() == 0);
  CHECK(reg.dim() == 1);
  CHECK(reg.matrix()(0, 0) == Complex(1.0));
  CHECK(reg.validate().ok());
}

TEST_CASE("append_qubits starts qubits in the dark state") {
  DensityRegister reg(4);
  reg.append_qubits(2, {{0, QubitRole::kGenotype}, {0, QubitRole::kPhenotype}});
  REQUIRE(reg.dim() == 4);
  CHECK(reg.matrix()(0, 0) == Complex(1.0));
  for (long r = 0; r < 4; ++r)
    for (long c = 0; c < 4; ++c)
      if (r != 0 || c != 0) CHECK(reg.matrix()(r, c) == Complex(0.0));
  CHECK(reg.labels()[0].role == QubitRole::kGenotype);
  CHECK(reg.labels()[1].role == QubitRole::kPhenotype);
}

TEST_CASE("append preserves the existing block") {
  Rng rng(3);
  DensityRegister reg = random_register(rng, 1, 4);
  const ComplexMatrix before = reg.matrix();
  reg.append_qubits(1, {{1, QubitRole::kGenotype}});
  // New qubit is least significant: old entries sit at even indices.
  for (long r = 0; r < 2; ++r)
    for (long c = 0; c < 2; ++c) CHECK(reg.matrix()(2 * r, 2 * c) == before(r, c));
  CHECK(std::abs(reg.matrix().trace() - Complex(1.0)) <= kAlgebraicTol);
}

TEST_CASE("append_state installs the given single-qubit state") {
  DensityRegister reg(4);
  ComplexMatrix rho(2, 2);
  rho << 0.7, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.3;
  reg.append_state(rho, {0, QubitRole::kGenotype});
  CHECK(max_abs_diff(reg.matrix(), rho) <= kAlgebraicTol);
  ComplexMatrix bad(2, 2);
  bad << 1.0, 0.0, 0.0, 1.0;  // trace 2
  CHECK_THROWS_AS(reg.append_state(bad, {}), std::invalid_argument);
}

TEST_CASE("capacity cap raises CapacityError") {
  DensityRegister reg(2);
  reg.append_qubits(2, std::vector<QubitLabel>(2));
  CHECK_THROWS_AS(reg.append_qubits(1, std::vector<QubitLabel>(1)), CapacityError);
  ComplexMatrix rho = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK_THROWS_AS(reg.append_state(rho, {}), CapacityError);
}

TEST_CASE("apply_unitary agrees with dense embedding on random registers") {
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    DensityRegister reg = random_register(rng, 3);
    const ComplexMatrix before = reg.matrix();

    std::vector<int> targets;
    switch (trial % 3) {
      case 0: targets = {static_cast<int>(rng.below(3))}; break;
      case 1: targets = {2, 0}; break;
      default: targets = {1, 2, 0}; break;
    }
    const ComplexMatrix u = testsupport::random_unitary(rng, 1L << targets.size());

    reg.apply_unitary(u, targets);
    const ComplexMatrix big = embed_unitary(u, targets, 3);
    CHECK(max_abs_diff(reg.matrix(), big * before * big.adjoint()) <= 1e-12);
  }
}

TEST_CASE("apply_unitary rejects bad input") {
  Rng rng(19);
  DensityRegister reg = random_register(rng, 2);
  const int t0[] = {0};
  CHECK_THROWS_AS(reg.apply_unitary(0.5 * identity2(), t0), std::invalid_argument);
  CHECK_THROWS_AS(reg.apply_unitary(ComplexMatrix::Identity(4, 4), t0),
                  std::invalid_argument);
  const int dup[] = {1, 1};
  CHECK_THROWS_AS(reg.apply_unitary(ComplexMatrix::Identity(4, 4), dup),
                  std::invalid_argument);
  const int oob[] = {2};
  CHECK_THROWS_AS(reg.apply_unitary(identity2(), oob), std::invalid_argument);
}

TEST_CASE("partial_trace recovers product factors") {
  DensityRegister reg(4);
  ComplexMatrix a(2, 2), b(2, 2);
  a << 0.8, Complex(0.05, 0.1), Complex(0.05, -0.1), 0.2;
  b << 0.4, Complex(-0.2, 0.0), Complex(-0.2, 0.0), 0.6;
  reg.append_state(a, {0, QubitRole::kGenotype});
  reg.append_state(b, {1, QubitRole::kGenotype});
  const int keep0[] = {0};
  const int keep1[] = {1};
  CHECK(max_abs_diff(reg.partial_trace(keep0), a) <= kAlgebraicTol);
  CHECK(max_abs_diff(reg.partial_trace(keep1), b) <= kAlgebraicTol);
  // Keep order is significant: {1,0} is the swapped two-qubit state.
  const int both_rev[] = {1, 0};
  CHECK(max_abs_diff(reg.partial_trace(both_rev), kron(b, a)) <= kAlgebraicTol);
}

TEST_CASE("partial_trace of a Bell pair is maximally mixed") {
  DensityRegister reg(4);
  reg.append_qubits(2, std::vector<QubitLabel>(2));
  const int h_target[] = {0};
  // Build the Bell pair from |00> with a Hadamard and CNOT.
  ComplexMatrix h(2, 2);
  const double s = std::numbers::sqrt2 / 2.0;
  h << s, s, s, -s;
  reg.apply_unitary(h, h_target);
  const int cx[] = {0, 1};
  reg.apply_unitary(gates::cnot(), cx);

  const int keep[] = {0};
  CHECK(max_abs_diff(reg.partial_trace(keep), 0.5 * identity2()) <= kAlgebraicTol);
  const int keep2[] = {1};
  CHECK(max_abs_diff(reg.partial_trace(keep2), 0.5 * identity2()) <= kAlgebraicTol);
}

TEST_CASE("partial_trace matches the definition on random states") {
  Rng rng(23);
  DensityRegister reg = random_register(rng, 3);
  const int keep[] = {0, 2};
  const ComplexMatrix got = reg.partial_trace(keep);
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  // Sum over the middle qubit: indices (b0 b1 b2) with qubit 0 the MSB.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int t = 0; t < 2; ++t) {
        const long r = ((i >> 1) << 2) | (t << 1) | (i & 1);
        const long c = ((j >> 1) << 2) | (t << 1) | (j & 1);
        want(i, j) += reg.matrix()(r, c);
      }
  CHECK(max_abs_diff(got, want) <= kAlgebraicTol);
  CHECK(std::abs(got.trace() - Complex(1.0)) <= kAlgebraicTol);
}

TEST_CASE("expect matches trace against the reduced state") {
  Rng rng(29);
  DensityRegister reg = random_register(rng, 3);
  const int targets[] = {1, 2};
  const ComplexMatrix obs = kron(sigma_z(), sigma_x());
  const double via_expect = reg.expect(obs, targets);
  const double via_trace = (reg.partial_trace(targets) * obs).trace().real();
  CHECK(via_expect == doctest::Approx(via_trace).epsilon(1e-12));
}

TEST_CASE("expect on computational states") {
  DensityRegister reg(4);
  reg.append_qubits(2, std::vector<QubitLabel>(2));
  const int q0[] = {0};
  const int q1[] = {1};
  CHECK(reg.expect(sigma_z(), q0) == doctest::Approx(1.0));
  CHECK(reg.expect(sigma_z(), q1) == doctest::Approx(1.0));
  CHECK(reg.expect(sigma_x(), q0) == doctest::Approx(0.0));
}

TEST_CASE("expect rejects non-Hermitian observables") {
  DensityRegister reg(2);
  reg.append_qubits(1, std::vector<QubitLabel>(1));
  ComplexMatrix raising = ket_bra(1, 0);
  const int q0[] = {0};
  CHECK_THROWS_AS(reg.expect(raising, q0), std::invalid_argument);
}

TEST_CASE("reset_qubit returns a qubit to the dark state") {
  Rng rng(31);
  DensityRegister reg = random_register(rng, 2);
  reg.reset_qubit(1);
  const int q1[] = {1};
  CHECK(reg.expect(sigma_z(), q1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(reg.matrix().trace() - Complex(1.0)) <= kAlgebraicTol);
  // The other qubit's marginal survives the reset.
  const int q0[] = {0};
  const ComplexMatrix kept = reg.partial_trace(q0);
  CHECK(std::abs(kept.trace() - Complex(1.0)) <= kAlgebraicTol);
}

TEST_CASE("reset_qubit preserves the other marginals exactly") {
  Rng rng(37);
  DensityRegister reg = random_register(rng, 3);
  const int others[] = {0, 2};
  const ComplexMatrix before = reg.partial_trace(others);
  reg.reset_qubit(1);
  CHECK(max_abs_diff(reg.partial_trace(others), before) <= kAlgebraicTol);
}

TEST_CASE("remove_qubits matches partial_trace and shifts labels") {
  Rng rng(41);
  DensityRegister reg(4);
  reg.append_qubits(3, {{0, QubitRole::kGenotype},
                        {0, QubitRole::kPhenotype},
                        {1, QubitRole::kGenotype}});
  reg.matrix() = testsupport::random_density(rng, 8);
  const int keep[] = {0, 2};
  const ComplexMatrix expected = reg.partial_trace(keep);
  const int drop[] = {1};
  reg.remove_qubits(drop);
  CHECK(reg.num_qubits() == 2);
  CHECK(max_abs_diff(reg.matrix(), expected) <= kAlgebraicTol);
  CHECK(reg.labels()[1].owner == 1);
  const int all[] = {0, 1};
  CHECK_THROWS_AS(reg.remove_qubits(all), std::invalid_argument);
}

TEST_CASE("validate reports defects") {
  Rng rng(43);
  DensityRegister reg = random_register(rng, 2);
  RegisterDiagnostics diag = reg.validate(true);
  CHECK(diag.hermiticity_defect <= kStateTol);
  CHECK(diag.trace_defect <= kStateTol);
  REQUIRE(diag.min_eigenvalue.has_value());
  CHECK(*diag.min_eigenvalue >= -kStateTol);
  CHECK(diag.ok(true));

  reg.matrix()(0, 1) += Complex(0.5, 0.0);  // break hermiticity
  CHECK(reg.validate().hermiticity_defect > 0.1);
  CHECK_FALSE(reg.validate().ok());
}
