#pragma once

#include <complex>
#include <Eigen/Dense>

namespace ew {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Tolerance tiers shared across the library.
inline constexpr double kStructureTol = 1e-12;
inline constexpr double kHermitianInputTol = 1e-10;
inline constexpr double kEigenTol = 1e-9;

enum class Subsystem { A, B };

/// Dense operator on C^dA (x) C^dB. Basis index of |k> (x) |l> is k*dB + l.
class BipartiteOperator {
 public:
  BipartiteOperator(int dA, int dB, Matrix entries);

  static BipartiteOperator identity(int dA, int dB);
  static BipartiteOperator zero(int dA, int dB);

  int dA() const { return dA_; }
  int dB() const { return dB_; }
  int dim() const { return dA_ * dB_; }
  const Matrix& matrix() const { return m_; }
  cplx operator()(int row, int col) const { return m_(row, col); }

  /// max |X - X^dagger| entry
  double hermiticity_error() const;
  bool is_hermitian(double tol = kStructureTol) const { return hermiticity_error() <= tol; }
  cplx trace() const { return m_.trace(); }
  BipartiteOperator adjoint() const { return {dA_, dB_, m_.adjoint()}; }

  BipartiteOperator& operator+=(const BipartiteOperator& other);
  BipartiteOperator& operator-=(const BipartiteOperator& other);
  BipartiteOperator& operator*=(cplx s);

 private:
  int dA_;
  int dB_;
  Matrix m_;
};

BipartiteOperator operator+(BipartiteOperator lhs, const BipartiteOperator& rhs);
BipartiteOperator operator-(BipartiteOperator lhs, const BipartiteOperator& rhs);
BipartiteOperator operator*(cplx s, BipartiteOperator op);
BipartiteOperator operator*(double s, BipartiteOperator op);
inline BipartiteOperator operator*(BipartiteOperator op, double s) { return s * std::move(op); }

/// Kronecker product; the result carries dA = rows(a), dB = rows(b).
BipartiteOperator tensor(const Matrix& a, const Matrix& b);
BipartiteOperator tensor(const BipartiteOperator& a, const BipartiteOperator& b);
Vector kron(const Vector& a, const Vector& b);

BipartiteOperator partial_transpose(const BipartiteOperator& x, Subsystem sys = Subsystem::B);

/// Eigenvalues sorted descending, eigenvectors as matching orthonormal columns.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

/// Symmetrizes (X + X^dagger)/2 before solving. Throws std::invalid_argument
/// when the input is non-Hermitian beyond kHermitianInputTol.
EigenSystem eig_hermitian(const Matrix& x);
EigenSystem eig_hermitian(const BipartiteOperator& x);
double min_eigenvalue(const Matrix& x);
double max_eigenvalue(const Matrix& x);

double max_abs(const Matrix& x);
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const BipartiteOperator& a, const BipartiteOperator& b);

Matrix projector(const Vector& v);
bool is_normalized(const Vector& v, double tol = kStructureTol);

/// tr(A B) without forming the product.
cplx trace_product(const Matrix& a, const Matrix& b);

}  // namespace ew
