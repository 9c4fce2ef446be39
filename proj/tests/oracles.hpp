#pragma once

// Reference computations used only by tests. They follow the defining
// formulas index by index and share no code with the library paths they check.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Y[(i dB + j), (k dB + l)] = X[(i dB + l), (k dB + j)]
inline Matrix partial_transpose_b(const Matrix& x, int dA, int dB) {
  Matrix y(dA * dB, dA * dB);
  for (int i = 0; i < dA; ++i)
    for (int j = 0; j < dB; ++j)
      for (int k = 0; k < dA; ++k)
        for (int l = 0; l < dB; ++l) y(i * dB + j, k * dB + l) = x(i * dB + l, k * dB + j);
  return y;
}

/// (A (x) B)[(i dB + j), (k dB + l)] = A[i,k] B[j,l]
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  const auto da = a.rows(), db = b.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < db; ++j)
      for (Eigen::Index k = 0; k < da; ++k)
        for (Eigen::Index l = 0; l < db; ++l) out(i * db + j, k * db + l) = a(i, k) * b(j, l);
  return out;
}

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cplx(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

inline Vector random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v.normalized();
}

/// Affine lines of Z_d x Z_d by brute force: solution sets of a k + b l = c.
inline std::set<std::set<std::pair<int, int>>> affine_lines(int d) {
  std::set<std::set<std::pair<int, int>>> lines;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == 0 && b == 0) continue;
      for (int c = 0; c < d; ++c) {
        std::set<std::pair<int, int>> line;
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            if ((a * k + b * l) % d == c) line.insert({k, l});
        lines.insert(line);
      }
    }
  return lines;
}

/// Max of <a b|X|a b> over random product vectors plus a local coordinate
/// refinement; a crude but independent lower bound on the product maximum.
inline double sampled_product_max(const Matrix& x, int dA, int dB, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double best = -1e300;
  for (int s = 0; s < samples; ++s) {
    const Vector a = random_unit(dA, rng), b = random_unit(dB, rng);
    Vector v(dA * dB);
    for (int i = 0; i < dA; ++i)
      for (int j = 0; j < dB; ++j) v(i * dB + j) = a(i) * b(j);
    best = std::max(best, v.dot(x * v).real());
  }
  return best;
}

/// |Omega_kl> from its components: omega^((j-l)k)/sqrt(d) at index j d + (j - l mod d).
inline Vector bell_vector(int d, int k, int l) {
  Vector v = Vector::Zero(d * d);
  for (int j = 0; j < d; ++j) {
    const int m = ((j - l) % d + d) % d;
    v(j * d + m) = std::polar(1.0 / std::sqrt(double(d)), 2.0 * std::numbers::pi * ((j - l) * k % d) / d);
  }
  return v;
}

/// sum_kl c[k][l] |Omega_kl><Omega_kl|
template <class Table>
Matrix bell_sum(int d, const Table& c, double scale = 1.0) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const Vector v = bell_vector(d, k, l);
      m += (c[k][l] * scale) * v * v.adjoint();
    }
  return m;
}

}  // namespace oracle
