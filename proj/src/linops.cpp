#include "ewit/linops.hpp"

#include <stdexcept>
#include <string>

namespace ew {

namespace {

void check_same_shape(const BipartiteOperator& a, const BipartiteOperator& b) {
  if (a.dA() != b.dA() || a.dB() != b.dB())
    throw std::invalid_argument("bipartite dimension mismatch");
}

}  // namespace

BipartiteOperator::BipartiteOperator(int dA, int dB, Matrix entries)
    : dA_(dA), dB_(dB), m_(std::move(entries)) {
  if (dA <= 0 || dB <= 0) throw std::invalid_argument("subsystem dimensions must be positive");
  if (m_.rows() != dA * dB || m_.cols() != dA * dB)
    throw std::invalid_argument("operator is " + std::to_string(m_.rows()) + "x" +
                                std::to_string(m_.cols()) + ", expected " +
                                std::to_string(dA * dB) + " square");
  if (!m_.allFinite()) throw std::invalid_argument("operator has non-finite entries");
}

BipartiteOperator BipartiteOperator::identity(int dA, int dB) {
  return {dA, dB, Matrix::Identity(dA * dB, dA * dB)};
}

BipartiteOperator BipartiteOperator::zero(int dA, int dB) {
  return {dA, dB, Matrix::Zero(dA * dB, dA * dB)};
}

double BipartiteOperator::hermiticity_error() const { return max_abs_diff(m_, m_.adjoint()); }

BipartiteOperator& BipartiteOperator::operator+=(const BipartiteOperator& other) {
  check_same_shape(*this, other);
  m_ += other.m_;
  return *this;
}

BipartiteOperator& BipartiteOperator::operator-=(const BipartiteOperator& other) {
  check_same_shape(*this, other);
  m_ -= other.m_;
  return *this;
}

BipartiteOperator& BipartiteOperator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

BipartiteOperator operator+(BipartiteOperator lhs, const BipartiteOperator& rhs) { return lhs += rhs; }
BipartiteOperator operator-(BipartiteOperator lhs, const BipartiteOperator& rhs) { return lhs -= rhs; }
BipartiteOperator operator*(cplx s, BipartiteOperator op) { return op *= s; }
BipartiteOperator operator*(double s, BipartiteOperator op) { return op *= cplx(s, 0.0); }

BipartiteOperator tensor(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols())
    throw std::invalid_argument("tensor: operands must be square");
  const auto da = a.rows(), db = b.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index k = 0; k < da; ++k) out.block(i * db, k * db, db, db) = a(i, k) * b;
  return {static_cast<int>(da), static_cast<int>(db), std::move(out)};
}

BipartiteOperator tensor(const BipartiteOperator& a, const BipartiteOperator& b) {
  return tensor(a.matrix(), b.matrix());
}

Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& x, Subsystem sys) {
  const int dA = x.dA(), dB = x.dB();
  Matrix y(x.dim(), x.dim());
  // Block (i,k) is a dB x dB matrix; transposing B transposes each block,
  // transposing A swaps the blocks.
  for (int i = 0; i < dA; ++i)
    for (int k = 0; k < dA; ++k) {
      if (sys == Subsystem::B)
        y.block(i * dB, k * dB, dB, dB) = x.matrix().block(i * dB, k * dB, dB, dB).transpose();
      else
        y.block(i * dB, k * dB, dB, dB) = x.matrix().block(k * dB, i * dB, dB, dB);
    }
  return {dA, dB, std::move(y)};
}

EigenSystem eig_hermitian(const Matrix& x) {
  if (x.rows() != x.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
  const double herm = max_abs_diff(x, x.adjoint());
  if (herm > kHermitianInputTol)
    throw std::invalid_argument("eig_hermitian: input not Hermitian (deviation " +
                                std::to_string(herm) + ")");
  const Matrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: solver failed");
  // Eigen returns ascending order.
  const auto n = x.rows();
  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = solver.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

EigenSystem eig_hermitian(const BipartiteOperator& x) { return eig_hermitian(x.matrix()); }

double min_eigenvalue(const Matrix& x) {
  const Matrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

double max_eigenvalue(const Matrix& x) {
  const Matrix sym = 0.5 * (x + x.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(x.rows() - 1);
}

double max_abs(const Matrix& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  return max_abs(a - b);
}

double max_abs_diff(const BipartiteOperator& a, const BipartiteOperator& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

bool is_normalized(const Vector& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

cplx trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product: shape mismatch");
  return a.cwiseProduct(b.transpose()).sum();
}

}  // namespace ew
