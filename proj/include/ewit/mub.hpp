#pragma once

#include <vector>

#include "ewit/linops.hpp"

namespace ew {

using Basis = std::vector<Vector>;

/// A full set of d+1 bases of C^d. bases[0] is the computational basis.
struct MubSet {
  int d = 0;
  std::vector<Basis> bases;

  const Vector& vector(int basis, int k) const { return bases.at(basis).at(k); }
};

/// The four fixed qutrit bases B1..B4 used by the Gamma witnesses
/// (index 0 here is B1, index 3 is B4).
MubSet qutrit_mubs();

/// <j|psi_k^(a)> = omega^(a j^2 + j k) / sqrt(d) for a = 1..d, computational
/// basis for a = 0. Throws std::invalid_argument unless d is an odd prime.
MubSet build_mubs(int d);

struct MubReport {
  double orthonormality_violation = 0.0;
  double unbiasedness_violation = 0.0;

  bool passes(double tol = kStructureTol) const {
    return orthonormality_violation <= tol && unbiasedness_violation <= tol;
  }
};

MubReport verify_mub(const MubSet& set);

bool is_prime(int n);

}  // namespace ew
