#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ewit/linops.hpp"
#include "ewit/simplex.hpp"

namespace ew {

struct ProductVector {
  Vector a;
  Vector b;

  Vector full() const { return kron(a, b); }
  ProductVector normalized() const { return {a.normalized(), b.normalized()}; }
  bool is_normalized(double tol = kStructureTol) const {
    return ew::is_normalized(a, tol) && ew::is_normalized(b, tol);
  }
};

struct PptResult {
  bool ppt;
  double min_pt_eigenvalue;
};

PptResult is_ppt(const BipartiteOperator& rho, double tol = kPositivityTol);

/// Re tr(W rho). Throws if the imaginary part exceeds 1e-12 or dimensions differ.
double detect(const BipartiteOperator& w, const BipartiteOperator& rho);

/// <a (x) b| W |a (x) b> for a normalized product vector.
double product_expectation(const BipartiteOperator& w, const ProductVector& pv);

// ---------------------------------------------------------------------------
// See-saw over product states

struct SeeSawConfig {
  int restarts = 64;
  int max_iterations = 500;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
};

struct SeeSawRestart {
  double value;
  int iterations;
  bool converged;
  bool monotone;  // no step moved the objective the wrong way beyond 1e-12
};

struct SeeSawResult {
  double value;
  ProductVector vector;
  int best_restart;
  bool all_converged;
  bool monotone;
  std::vector<SeeSawRestart> restarts;  // in restart-index order
};

/// Alternating eigenvector updates of the two local factors. The best restart
/// is picked by (value, restart index), so results do not depend on threading.
SeeSawResult min_product_expectation(const BipartiteOperator& w, const SeeSawConfig& cfg = {});
SeeSawResult max_product_expectation(const BipartiteOperator& w, const SeeSawConfig& cfg = {});

enum class BlockPositivity { EvidencePositive, Refuted };

struct BlockPositivityEvidence {
  double min_value;
  ProductVector vector;
  BlockPositivity verdict;
};

/// Refuted iff the see-saw finds a product vector with expectation < -1e-8.
/// A positive verdict is numerical evidence, not a proof.
BlockPositivityEvidence block_positivity_evidence(const BipartiteOperator& w,
                                                  const SeeSawConfig& cfg = {});

// ---------------------------------------------------------------------------
// Zero sets and spanning certificates

/// The nine printed product pairs (unnormalized), k = 1..9 order.
std::vector<ProductVector> zero_family_d3_raw();
/// Same, normalized.
std::vector<ProductVector> zero_family_d3();
/// |U alpha_k (x) U* beta_k>, normalized; zero set of the mirrored partner.
std::vector<ProductVector> rotated_zero_family_d3();
/// Row order used by the printed R1/R2 coordinate matrices, 0-based indices into k = 1..9.
std::vector<int> r_matrix_row_order();
std::vector<ProductVector> reorder(const std::vector<ProductVector>& pairs,
                                   const std::vector<int>& order);

struct SpanReport {
  std::vector<double> zero_values;
  int rank_direct;
  int rank_conjugate;
  bool square;
  cplx det_direct;
  cplx det_conjugate;
  int full_dim;

  bool bi_spanning(double zero_tol = 1e-10) const;
};

/// Row i of the direct (conjugate) matrix holds the coordinates of
/// a_i (x) b_i (a_i (x) conj(b_i)) in the product basis. Determinants use the
/// rows as given; zero values use normalized vectors.
SpanReport span_report(const BipartiteOperator& w, const std::vector<ProductVector>& pairs);
Matrix coordinate_matrix(const std::vector<ProductVector>& pairs, bool conjugate_second);
int numerical_rank(const Matrix& m, double rel_tol = 1e-10);

// ---------------------------------------------------------------------------
// Negative eigenspace and completely-entangled-subspace evidence

/// Orthonormal columns spanning eigenvectors with eigenvalue < -1e-10.
Matrix negative_eigenspace(const BipartiteOperator& w);

enum class CesVerdict { CesEvidence, ContainsProduct, Inconclusive };

struct CesEvidence {
  double max_product_overlap;
  ProductVector vector;
  CesVerdict verdict;
};

CesEvidence ces_evidence(const Matrix& basis, int dA, int dB, const SeeSawConfig& cfg = {});

// ---------------------------------------------------------------------------
// Local observable expansion

/// Generalized Gell-Mann basis: G_0 = identity, then symmetric, antisymmetric
/// and diagonal generators with tr(G_i G_j) = 2 delta_ij for i, j > 0.
std::vector<Matrix> gell_mann_basis(int d);

struct LocalDecomposition {
  std::vector<Matrix> basis_a;
  std::vector<Matrix> basis_b;
  RealMatrix coefficients;  // W = sum_ij t_ij G_i (x) G_j
  double max_imaginary;
  double reconstruction_error;
};

LocalDecomposition local_decomposition(const BipartiteOperator& w);

// ---------------------------------------------------------------------------

struct NamedValue {
  std::string name;
  double value;
};

struct WitnessReport {
  std::vector<double> spectrum;  // descending
  int n_negative;
  double min_product_value;
  double max_product_value;
  std::pair<double, double> mu_bracket;  // (best product max, lambda_max)
  std::vector<NamedValue> detected_states;
};

WitnessReport witness_report(const BipartiteOperator& w, const std::vector<NamedOperator>& states,
                             const SeeSawConfig& cfg = {});

}  // namespace ew
