#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ewit/certify.hpp"
#include "ewit/linops.hpp"
#include "ewit/mub.hpp"
#include "ewit/simplex.hpp"

namespace ew {

/// A split of the MUB labels {1, ..., d+1} into gamma and its complement.
class GammaSplit {
 public:
  GammaSplit(int d, std::vector<int> gamma);

  int d() const { return d_; }
  const std::vector<int>& gamma() const { return gamma_; }
  std::vector<int> complement() const;
  GammaSplit complement_split() const { return {d_, complement()}; }
  /// "12", "34", ...
  std::string label() const;

 private:
  int d_;
  std::vector<int> gamma_;
};

using LinearMap = std::function<Matrix(const Matrix&)>;

/// sum_k P_k rho P_k over the projectors of an orthonormal basis.
Matrix dephase(const Basis& basis, const Matrix& rho);
BipartiteOperator dephase(const Basis& basis, const BipartiteOperator& rho);

/// (1/d) tr(rho) 1
Matrix depolarize(const Matrix& rho);

/// 2 Phi_0 + sum_{alpha in complement} Phi_alpha - sum_{beta in gamma} Phi_beta.
/// Only the qutrit two-element split is supported; MUB labels are 1-based.
Matrix phi_gamma_apply(const GammaSplit& split, const MubSet& mubs, const Matrix& rho);

/// sum_kl |k><l| (x) map(|k><l|)
BipartiteOperator choi(const LinearMap& map, int d);

/// d * choi(Phi_gamma): the normalization of the displayed qutrit witnesses,
/// for which W_gamma + W_gamma_c = 4 (1 (x) 1).
BipartiteOperator gamma_witness(const GammaSplit& split, const MubSet& mubs = qutrit_mubs());

struct CirculantParams {
  double a;
  double b;
  double x;
  cplx z;
};

BipartiteOperator circulant_witness(const CirculantParams& p);
/// Parameter row for a two-element qutrit split.
CirculantParams circulant_params(const GammaSplit& split);

BipartiteOperator mirror_partner(const BipartiteOperator& w, double mu);

struct MirrorResult {
  double mu;                 // best product-state maximum found (lower bound on the true mu)
  double mu_upper;           // lambda_max(W)
  BipartiteOperator partner;
  double partner_min_product_value;
  double partner_max_eigenvalue;
  bool partner_is_witness;   // lambda_max(W) > mu
  bool converged;
};

MirrorResult find_mirror_mu(const BipartiteOperator& w, const SeeSawConfig& cfg = {});

/// The local unitary with W_gamma_c = (U (x) U*) W_gamma (U (x) U*)^dagger.
Matrix mirror_local_unitary();

// ---------------------------------------------------------------------------
// Catalog

enum class CatalogKind { Witness, State, Reference };

struct CatalogEntry {
  std::string name;
  std::string description;
  CatalogKind kind;
  BipartiteOperator op;
  std::optional<BellCoefficients> bell;
  /// Empty for verbatim entries; otherwise a caveat (erratum, non-normalized).
  std::string flag;
};

std::vector<std::string> catalog_names();
/// Throws std::out_of_range for unknown names. flip_dN / reduction_dN accept any N >= 2.
CatalogEntry catalog(std::string_view name);
inline BipartiteOperator catalog_operator(std::string_view name) { return catalog(name).op; }

BipartiteOperator flip_operator(int d);
BipartiteOperator reduction_witness(int d);
/// |Omega_00><Omega_00| with Omega_00 = sum_j |jj>/sqrt(d)
BipartiteOperator max_entangled_projector(int d);

}  // namespace ew
