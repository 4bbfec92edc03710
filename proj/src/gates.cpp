#include "qal/gates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qal::gates {

ComplexMatrix cnot() {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(2, 2) = 0;
  m(3, 3) = 0;
  m(2, 3) = 1;
  m(3, 2) = 1;
  return m;
}

ComplexMatrix mutation_m(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  ComplexMatrix m(2, 2);
  m << c, s, s, -c;
  return m;
}

ComplexMatrix imperfect_clone(double theta) {
  ComplexMatrix j(2, 2);
  j << -1, 1, 1, -1;
  const Complex w = 0.5 * (std::polar(1.0, theta) + 1.0);
  return ComplexMatrix::Identity(4, 4) + w * kron(ket_bra(1, 1), j);
}

ComplexMatrix interaction_ui() {
  const ComplexMatrix id = identity2();
  const ComplexMatrix k1 = ket_bra(0, 0), k2 = ket_bra(0, 1);
  const ComplexMatrix k3 = ket_bra(1, 0), k4 = ket_bra(1, 1);

  // Qubit order (g1, p1, g2, p2). Equal genotypes: identity on phenotypes.
  // Unequal: phenotypes exchanged (diagonal terms keep equal phenotype
  // pairs, the k2/k3 cross terms move the unequal ones).
  ComplexMatrix g1_low = kron(id, kron(k1, id)) + kron(k1, kron(k4, k1)) +
                         kron(k4, kron(k4, k4)) + kron(k2, kron(k4, k3)) +
                         kron(k3, kron(k4, k2));
  ComplexMatrix g1_high = kron(id, kron(k4, id)) + kron(k1, kron(k1, k1)) +
                          kron(k4, kron(k1, k4)) + kron(k2, kron(k1, k3)) +
                          kron(k3, kron(k1, k2));
  return kron(k1, g1_low) + kron(k4, g1_high);
}

ComplexMatrix toffoli() {
  ComplexMatrix m = ComplexMatrix::Identity(8, 8);
  m(6, 6) = 0;
  m(7, 7) = 0;
  m(6, 7) = 1;
  m(7, 6) = 1;
  return m;
}

int GateSpec::arity() const {
  switch (kind) {
    case GateKind::kCnot: return 2;
    case GateKind::kMutation: return 1;
    case GateKind::kImperfectClone: return 2;
    case GateKind::kInteraction: return 4;
    case GateKind::kToffoli: return 3;
  }
  throw std::invalid_argument("GateSpec: unknown kind");
}

ComplexMatrix GateSpec::matrix() const {
  switch (kind) {
    case GateKind::kCnot: return cnot();
    case GateKind::kMutation: return mutation_m(theta);
    case GateKind::kImperfectClone: return imperfect_clone(theta);
    case GateKind::kInteraction: return interaction_ui();
    case GateKind::kToffoli: return toffoli();
  }
  throw std::invalid_argument("GateSpec: unknown kind");
}

std::string GateSpec::name() const {
  switch (kind) {
    case GateKind::kCnot: return "cnot";
    case GateKind::kMutation: return "mutation";
    case GateKind::kImperfectClone: return "imperfect_clone";
    case GateKind::kInteraction: return "interaction";
    case GateKind::kToffoli: return "toffoli";
  }
  throw std::invalid_argument("GateSpec: unknown kind");
}

namespace {

// Reads a 0/1 permutation matrix as b -> perm(b); returns false if any
// column is not a single exact 1.
bool as_permutation(const ComplexMatrix& m, std::vector<int>& perm) {
  const long d = m.rows();
  perm.assign(d, -1);
  for (long c = 0; c < d; ++c) {
    int hit = -1;
    for (long r = 0; r < d; ++r) {
      const Complex v = m(r, c);
      if (v == Complex(0.0)) continue;
      if (v != Complex(1.0) || hit >= 0) return false;
      hit = static_cast<int>(r);
    }
    if (hit < 0) return false;
    perm[c] = hit;
  }
  return true;
}

std::vector<int> moved_states(const std::vector<int>& perm) {
  std::vector<int> out;
  for (int b = 0; b < static_cast<int>(perm.size()); ++b)
    if (perm[b] != b) out.push_back(b);
  return out;
}

}  // namespace

RelabelResult verify_ui_toffoli_equivalence() {
  RelabelResult result;
  const ComplexMatrix u = interaction_ui();
  const ComplexMatrix c = kron(identity2(), toffoli());

  std::vector<int> uperm, cperm;
  if (!as_permutation(u, uperm) || !as_permutation(c, cperm)) return result;

  const std::vector<int> umoved = moved_states(uperm);  // two disjoint swaps
  const std::vector<int> cmoved = moved_states(cperm);
  if (umoved.size() != 4 || cmoved.size() != 4) return result;

  // Swap pairs in ascending-first order: {umoved[0], uperm[umoved[0]]} etc.
  const std::array<std::array<int, 2>, 2> upairs = {
      {{umoved[0], uperm[umoved[0]]}, {umoved[2], uperm[umoved[2]]}}};
  const std::array<std::array<int, 2>, 2> cpairs = {
      {{cmoved[0], cperm[cmoved[0]]}, {cmoved[2], cperm[cmoved[2]]}}};

  // States moved by neither gate map to themselves. The pair assignments
  // send c's support onto u's support; what is left unassigned in the domain
  // is u-moved-but-c-fixed (must land on u-fixed states), and the codomain
  // slots still free are c-moved-but-u-fixed.
  std::vector<int> c_only, u_only;
  for (int b : cmoved)
    if (std::find(umoved.begin(), umoved.end(), b) == umoved.end()) c_only.push_back(b);
  for (int b : umoved)
    if (std::find(cmoved.begin(), cmoved.end(), b) == cmoved.end()) u_only.push_back(b);
  if (c_only.size() != u_only.size()) return result;

  std::vector<int> leftover = c_only;
  std::sort(leftover.begin(), leftover.end());

  for (int assign = 0; assign < 2; ++assign) {
    for (int o1 = 0; o1 < 2; ++o1) {
      for (int o2 = 0; o2 < 2; ++o2) {
        std::vector<int> left = leftover;
        do {
          std::array<int, 16> p{};
          for (int b = 0; b < 16; ++b) p[b] = b;
          const auto& t1 = upairs[assign];
          const auto& t2 = upairs[1 - assign];
          p[cpairs[0][0]] = t1[o1];
          p[cpairs[0][1]] = t1[1 - o1];
          p[cpairs[1][0]] = t2[o2];
          p[cpairs[1][1]] = t2[1 - o2];
          for (size_t i = 0; i < u_only.size(); ++i) p[u_only[i]] = left[i];

          ComplexMatrix r = ComplexMatrix::Zero(16, 16);
          for (int b = 0; b < 16; ++b) r(p[b], b) = 1.0;
          const double defect = max_abs_diff(r.adjoint() * u * r, c);
          if (defect <= kAlgebraicTol) {
            result.found = true;
            result.permutation = p;
            result.defect = defect;
            return result;
          }
        } while (std::next_permutation(left.begin(), left.end()));
      }
    }
  }
  return result;
}

}  // namespace qal::gates
