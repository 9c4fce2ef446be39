#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ewit/linops.hpp"

namespace ew {

/// Weyl operator W_kl = sum_j omega^(jk) |j><j+l|, indices reduced mod d.
Matrix weyl(int d, int k, int l);

/// Projector onto |Omega_kl> = (1 (x) W_kl)|Omega_00>.
BipartiteOperator bell_projector(int d, int k, int l);
Vector bell_vector(int d, int k, int l);

/// Real coefficients x_kl over the Bell projectors P_kl.
class BellCoefficients {
 public:
  explicit BellCoefficients(RealMatrix coeffs);
  /// Integer table times a common scale, e.g. the 1/13 of the d=5 states.
  static BellCoefficients scaled(const std::vector<std::vector<int>>& table, double scale);

  int d() const { return static_cast<int>(c_.rows()); }
  const RealMatrix& coeffs() const { return c_; }
  double operator()(int k, int l) const { return c_(k, l); }
  double sum() const { return c_.sum(); }

  /// Nonnegative entries summing to one, within tol.
  bool is_state(double tol = kStructureTol) const;

 private:
  RealMatrix c_;
};

BipartiteOperator bell_encode(const BellCoefficients& bc);

struct BellDecomposition {
  BellCoefficients coeffs;
  double residual;  // max |X - sum x_kl P_kl|
  bool is_bell_diagonal(double tol = kStructureTol) const { return residual <= tol; }
};

/// x_kl = tr(X P_kl). Non-Bell-diagonal input shows up as a large residual.
BellDecomposition bell_decode(const BipartiteOperator& x);

using PhasePoint = std::pair<int, int>;
using PhaseLine = std::vector<PhasePoint>;

/// All d(d+1) affine lines of Z_d x Z_d, grouped by direction. Odd primes only.
std::vector<PhaseLine> phase_space_lines(int d);

/// Uniform mixture over the Bell states on a line.
BellCoefficients line_mixture(int d, const PhaseLine& line);

/// Every coefficient of a Bell-diagonal state lies in [0, 1/d].
bool in_enclosure(const BellCoefficients& bc);

struct KernelResult {
  double distance;                    // Euclidean distance to the hull found
  std::vector<double> line_weights;   // in phase_space_lines order
  bool member(double tol = 1e-6) const { return distance <= tol; }
};

/// Approximate distance from bc to the convex hull of line mixtures
/// (Frank-Wolfe). Evidence for kernel membership only.
KernelResult kernel_distance(const BellCoefficients& bc, int iterations = 20000);

/// ((1-alpha-beta)/d^2) 1 + alpha rho_a + beta rho_b
BipartiteOperator slice_state(double alpha, double beta, const BipartiteOperator& rho_a,
                              const BipartiteOperator& rho_b);

struct NamedOperator {
  std::string name;
  BipartiteOperator op;
};

struct SlicePoint {
  double alpha = 0.0;
  double beta = 0.0;
  bool is_state = false;
  double min_eig = 0.0;
  bool is_ppt = false;
  double min_ppt_eig = 0.0;
  bool in_enclosure = false;
  std::vector<double> witness_values;
};

struct SliceSpec {
  double alpha_min = 0.0, alpha_max = 1.0;
  double beta_min = 0.0, beta_max = 1.0;
  int alpha_steps = 201;
  int beta_steps = 201;
};

struct SliceGrid {
  SliceSpec spec;
  std::vector<std::string> witness_names;
  std::vector<SlicePoint> points;  // row-major: alpha outer, beta inner

  const SlicePoint& at(int ia, int ib) const { return points.at(ia * spec.beta_steps + ib); }
};

inline constexpr double kPositivityTol = 1e-10;

/// Square grid over the bounding box of the state region of the slice.
SliceSpec default_slice_spec(const BipartiteOperator& rho_a, const BipartiteOperator& rho_b,
                             int steps = 201);

SliceGrid scan_slice(const SliceSpec& spec, const BipartiteOperator& rho_a,
                     const BipartiteOperator& rho_b, const std::vector<NamedOperator>& witnesses);

/// Grid pairs (a,b) / (b,a) whose PPT labels disagree by more than tol.
/// Requires a square grid with equal alpha and beta ranges.
std::vector<std::pair<int, int>> ppt_asymmetric_pairs(const SliceGrid& grid, double tol = 1e-8);

}  // namespace ew
