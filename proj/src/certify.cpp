#include "ewit/certify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "ewit/witnesses.hpp"
#include "parallel.hpp"

namespace ew {

namespace {

void require_same_dims(const BipartiteOperator& a, const BipartiteOperator& b, const char* what) {
  if (a.dA() != b.dA() || a.dB() != b.dB()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Vector random_unit(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v.normalized();
}

/// (<a| (x) 1) W (|a> (x) 1), a dB x dB matrix.
Matrix contract_first(const Matrix& w, int dA, int dB, const Vector& a) {
  Matrix out = Matrix::Zero(dB, dB);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k) {
      const cplx coef = std::conj(a(i)) * a(k);
      if (coef != cplx{}) out += coef * w.block(i * dB, k * dB, dB, dB);
    }
  return out;
}

/// (1 (x) <b|) W (1 (x) |b>), a dA x dA matrix.
Matrix contract_second(const Matrix& w, int dA, int dB, const Vector& b) {
  Matrix out(dA, dA);
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k) out(i, k) = b.dot(w.block(i * dB, k * dB, dB, dB) * b);
  return out;
}

/// Extremal eigenpair of a small Hermitian matrix.
std::pair<double, Vector> extremal(const Matrix& m, bool maximize) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  const Eigen::Index idx = maximize ? m.rows() - 1 : 0;
  return {solver.eigenvalues()(idx), solver.eigenvectors().col(idx)};
}

struct RestartOutcome {
  SeeSawRestart summary;
  ProductVector vector;
};

RestartOutcome run_restart(const BipartiteOperator& w, const SeeSawConfig& cfg, int index,
                           bool maximize) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index), 0x5ee5a3u};
  std::mt19937_64 rng(seq);
  const int dA = w.dA(), dB = w.dB();
  const Matrix& m = w.matrix();
  Vector a = random_unit(dA, rng);
  Vector b = random_unit(dB, rng);

  const double sign = maximize ? 1.0 : -1.0;
  const double slack = 1e-12 * std::max(1.0, max_abs(m));
  double value = kron(a, b).dot(m * kron(a, b)).real();
  bool monotone = true;
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iterations && !converged; ++it) {
    const double before = value;
    auto [vb, nb] = extremal(contract_first(m, dA, dB, a), maximize);
    if (sign * (vb - value) < -slack) monotone = false;
    b = nb;
    auto [va, na] = extremal(contract_second(m, dA, dB, b), maximize);
    if (sign * (va - vb) < -slack) monotone = false;
    a = na;
    value = va;
    converged = std::abs(value - before) <= cfg.tolerance;
  }
  return {{value, it, converged, monotone}, {a, b}};
}

SeeSawResult optimize(const BipartiteOperator& w, const SeeSawConfig& cfg, bool maximize) {
  if (!w.is_hermitian(kHermitianInputTol))
    throw std::invalid_argument("product-state optimization needs a Hermitian operator");
  if (cfg.restarts < 1) throw std::invalid_argument("see-saw needs at least one restart");
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  detail::parallel_for(outcomes.size(), [&](std::size_t i) {
    outcomes[i] = run_restart(w, cfg, static_cast<int>(i), maximize);
  });

  SeeSawResult result{0.0, {}, 0, true, true, {}};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& s = outcomes[i].summary;
    result.restarts.push_back(s);
    result.all_converged = result.all_converged && s.converged;
    result.monotone = result.monotone && s.monotone;
    const double best = outcomes[result.best_restart].summary.value;
    // strict comparison keeps the lowest restart index on ties
    if (maximize ? s.value > best : s.value < best) result.best_restart = static_cast<int>(i);
  }
  result.value = outcomes[result.best_restart].summary.value;
  result.vector = outcomes[result.best_restart].vector;
  return result;
}

}  // namespace

PptResult is_ppt(const BipartiteOperator& rho, double tol) {
  if (!rho.is_hermitian(kHermitianInputTol)) throw std::invalid_argument("is_ppt: input is not Hermitian");
  const double min_pt = min_eigenvalue(partial_transpose(rho).matrix());
  return {min_pt >= -tol, min_pt};
}

double detect(const BipartiteOperator& w, const BipartiteOperator& rho) {
  require_same_dims(w, rho, "detect");
  const cplx v = trace_product(w.matrix(), rho.matrix());
  if (std::abs(v.imag()) > kStructureTol)
    throw std::invalid_argument("detect: tr(W rho) has imaginary part " + std::to_string(v.imag()));
  return v.real();
}

double product_expectation(const BipartiteOperator& w, const ProductVector& pv) {
  if (pv.a.size() != w.dA() || pv.b.size() != w.dB())
    throw std::invalid_argument("product_expectation: dimension mismatch");
  const Vector v = pv.full();
  return v.dot(w.matrix() * v).real();
}

SeeSawResult min_product_expectation(const BipartiteOperator& w, const SeeSawConfig& cfg) {
  return optimize(w, cfg, false);
}

SeeSawResult max_product_expectation(const BipartiteOperator& w, const SeeSawConfig& cfg) {
  return optimize(w, cfg, true);
}

BlockPositivityEvidence block_positivity_evidence(const BipartiteOperator& w, const SeeSawConfig& cfg) {
  SeeSawResult r = min_product_expectation(w, cfg);
  const auto verdict = r.value < -1e-8 ? BlockPositivity::Refuted : BlockPositivity::EvidencePositive;
  return {r.value, std::move(r.vector), verdict};
}

// ---------------------------------------------------------------------------

std::vector<ProductVector> zero_family_d3_raw() {
  const cplx xi = std::polar(1.0 / std::sqrt(2.0), std::numbers::pi / 4.0);
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const cplx wc = std::conj(w);
  auto e = [](int k) { return Vector(Vector::Unit(3, k).cast<cplx>()); };

  std::vector<ProductVector> out;
  for (int a = 0; a < 3; ++a) {
    const int b = (a == 0) ? 1 : 0;
    const int c = (a == 2) ? 1 : 2;
    out.push_back({e(a), e(a)});
    const Vector sym = e(a) + xi * (e(b) + e(c));
    out.push_back({sym, sym});
    out.push_back({e(a) + xi * (w * e(b) + wc * e(c)), e(a) + xi * (wc * e(b) + w * e(c))});
  }
  return out;
}

std::vector<ProductVector> zero_family_d3() {
  auto pairs = zero_family_d3_raw();
  for (auto& p : pairs) p = p.normalized();
  return pairs;
}

std::vector<ProductVector> rotated_zero_family_d3() {
  const Matrix u = mirror_local_unitary();
  const Matrix uc = u.conjugate();
  std::vector<ProductVector> out;
  for (const auto& p : zero_family_d3()) out.push_back({u * p.a, uc * p.b});
  return out;
}

std::vector<int> r_matrix_row_order() { return {0, 3, 6, 1, 2, 4, 5, 8, 7}; }

std::vector<ProductVector> reorder(const std::vector<ProductVector>& pairs, const std::vector<int>& order) {
  std::vector<ProductVector> out;
  for (int i : order) out.push_back(pairs.at(i));
  return out;
}

Matrix coordinate_matrix(const std::vector<ProductVector>& pairs, bool conjugate_second) {
  if (pairs.empty()) throw std::invalid_argument("coordinate_matrix: no product vectors");
  const auto n = pairs.front().a.size() * pairs.front().b.size();
  Matrix r(static_cast<Eigen::Index>(pairs.size()), n);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Vector b = conjugate_second ? Vector(pairs[i].b.conjugate()) : pairs[i].b;
    const Vector row = kron(pairs[i].a, b);
    if (row.size() != n) throw std::invalid_argument("coordinate_matrix: mixed dimensions");
    r.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return r;
}

int numerical_rank(const Matrix& m, double rel_tol) {
  const RealVector s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

bool SpanReport::bi_spanning(double zero_tol) const {
  for (double z : zero_values)
    if (z > zero_tol) return false;
  return rank_direct == full_dim && rank_conjugate == full_dim;
}

SpanReport span_report(const BipartiteOperator& w, const std::vector<ProductVector>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("span_report: no product vectors");
  SpanReport rep{};
  for (const auto& p : pairs) rep.zero_values.push_back(std::abs(product_expectation(w, p.normalized())));
  const Matrix direct = coordinate_matrix(pairs, false);
  const Matrix conj = coordinate_matrix(pairs, true);
  rep.full_dim = w.dim();
  rep.rank_direct = numerical_rank(direct);
  rep.rank_conjugate = numerical_rank(conj);
  rep.square = direct.rows() == direct.cols();
  if (rep.square) {
    rep.det_direct = direct.partialPivLu().determinant();
    rep.det_conjugate = conj.partialPivLu().determinant();
  }
  return rep;
}

// ---------------------------------------------------------------------------

Matrix negative_eigenspace(const BipartiteOperator& w) {
  const EigenSystem es = eig_hermitian(w);
  Eigen::Index count = 0;
  while (count < es.values.size() && es.values(es.values.size() - 1 - count) < -kPositivityTol) ++count;
  return es.vectors.rightCols(count);
}

CesEvidence ces_evidence(const Matrix& basis, int dA, int dB, const SeeSawConfig& cfg) {
  if (basis.rows() != dA * dB) throw std::invalid_argument("ces_evidence: basis has wrong dimension");
  if (basis.cols() == 0)
    return {0.0, {Vector::Unit(dA, 0).cast<cplx>(), Vector::Unit(dB, 0).cast<cplx>()}, CesVerdict::CesEvidence};
  const Matrix gram = basis.adjoint() * basis;
  if (max_abs_diff(gram, Matrix::Identity(gram.rows(), gram.cols())) > kHermitianInputTol)
    throw std::invalid_argument("ces_evidence: basis is not orthonormal");
  const BipartiteOperator proj(dA, dB, basis * basis.adjoint());
  SeeSawResult r = max_product_expectation(proj, cfg);
  CesVerdict verdict = CesVerdict::Inconclusive;
  if (r.value >= 1.0 - 1e-10)
    verdict = CesVerdict::ContainsProduct;
  else if (r.value <= 1.0 - 1e-6)
    verdict = CesVerdict::CesEvidence;
  return {r.value, std::move(r.vector), verdict};
}

// ---------------------------------------------------------------------------

std::vector<Matrix> gell_mann_basis(int d) {
  std::vector<Matrix> g;
  g.push_back(Matrix::Identity(d, d));
  const cplx i{0.0, 1.0};
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix s = Matrix::Zero(d, d);
      s(j, k) = s(k, j) = 1.0;
      g.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(j, k) = -i;
      a(k, j) = i;
      g.push_back(a);
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    const double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -l * norm;
    g.push_back(diag);
  }
  return g;
}

LocalDecomposition local_decomposition(const BipartiteOperator& w) {
  LocalDecomposition out;
  out.basis_a = gell_mann_basis(w.dA());
  out.basis_b = gell_mann_basis(w.dB());
  const auto na = out.basis_a.size(), nb = out.basis_b.size();
  out.coefficients = RealMatrix::Zero(static_cast<Eigen::Index>(na), static_cast<Eigen::Index>(nb));
  out.max_imaginary = 0.0;
  Matrix rebuilt = Matrix::Zero(w.dim(), w.dim());
  for (std::size_t i = 0; i < na; ++i) {
    const double norm_a = out.basis_a[i].squaredNorm();
    for (std::size_t j = 0; j < nb; ++j) {
      const double norm_b = out.basis_b[j].squaredNorm();
      const Matrix g = tensor(out.basis_a[i], out.basis_b[j]).matrix();
      const cplx t = trace_product(w.matrix(), g) / (norm_a * norm_b);
      out.max_imaginary = std::max(out.max_imaginary, std::abs(t.imag()));
      out.coefficients(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t.real();
      if (t.real() != 0.0) rebuilt += t.real() * g;
    }
  }
  out.reconstruction_error = max_abs_diff(rebuilt, w.matrix());
  return out;
}

// ---------------------------------------------------------------------------

WitnessReport witness_report(const BipartiteOperator& w, const std::vector<NamedOperator>& states,
                             const SeeSawConfig& cfg) {
  const EigenSystem es = eig_hermitian(w);
  WitnessReport rep;
  rep.spectrum.assign(es.values.begin(), es.values.end());
  rep.n_negative = 0;
  for (double v : rep.spectrum)
    if (v < -kPositivityTol) ++rep.n_negative;
  rep.min_product_value = min_product_expectation(w, cfg).value;
  rep.max_product_value = max_product_expectation(w, cfg).value;
  rep.mu_bracket = {rep.max_product_value, rep.spectrum.front()};
  for (const auto& s : states) rep.detected_states.push_back({s.name, detect(w, s.op)});
  return rep;
}

}  // namespace ew
