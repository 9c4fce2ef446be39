#include "ewit/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ewit/mub.hpp"
#include "parallel.hpp"

namespace ew {

namespace {

int mod(int a, int d) { return ((a % d) + d) % d; }

cplx omega_power(int d, long long p) {
  const long long r = ((p % d) + d) % d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

}  // namespace

Matrix weyl(int d, int k, int l) {
  if (d < 2) throw std::invalid_argument("weyl: d must be at least 2");
  Matrix w = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) w(j, mod(j + l, d)) = omega_power(d, static_cast<long long>(j) * k);
  return w;
}

Vector bell_vector(int d, int k, int l) {
  // (1 (x) W_kl) sum_j |j j>/sqrt(d); W_kl|j> = omega^((j-l)k) |j-l>
  Vector v = Vector::Zero(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    const int m = mod(j - l, d);
    v(j * d + m) = norm * omega_power(d, static_cast<long long>(m) * k);
  }
  return v;
}

BipartiteOperator bell_projector(int d, int k, int l) {
  return {d, d, projector(bell_vector(d, k, l))};
}

BellCoefficients::BellCoefficients(RealMatrix coeffs) : c_(std::move(coeffs)) {
  if (c_.rows() != c_.cols() || c_.rows() < 2)
    throw std::invalid_argument("Bell coefficients must be a square d x d matrix, d >= 2");
  if (!c_.allFinite()) throw std::invalid_argument("Bell coefficients must be finite");
}

BellCoefficients BellCoefficients::scaled(const std::vector<std::vector<int>>& table,
                                          double scale) {
  const auto d = static_cast<Eigen::Index>(table.size());
  RealMatrix c(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    if (static_cast<Eigen::Index>(table[k].size()) != d)
      throw std::invalid_argument("Bell coefficient table is not square");
    for (Eigen::Index l = 0; l < d; ++l) c(k, l) = table[k][l] * scale;
  }
  return BellCoefficients(std::move(c));
}

bool BellCoefficients::is_state(double tol) const {
  return c_.minCoeff() >= -tol && std::abs(c_.sum() - 1.0) <= tol;
}

BipartiteOperator bell_encode(const BellCoefficients& bc) {
  const int d = bc.d();
  Matrix x = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      if (bc(k, l) != 0.0) x += bc(k, l) * projector(bell_vector(d, k, l));
  return {d, d, std::move(x)};
}

BellDecomposition bell_decode(const BipartiteOperator& x) {
  if (x.dA() != x.dB()) throw std::invalid_argument("bell_decode: needs equal local dimensions");
  const int d = x.dA();
  RealMatrix c(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      const Vector v = bell_vector(d, k, l);
      c(k, l) = v.dot(x.matrix() * v).real();
    }
  BellCoefficients bc(std::move(c));
  const double residual = max_abs_diff(x.matrix(), bell_encode(bc).matrix());
  return {std::move(bc), residual};
}

std::vector<PhaseLine> phase_space_lines(int d) {
  if (d % 2 == 0 || !is_prime(d))
    throw std::invalid_argument("phase_space_lines: d = " + std::to_string(d) +
                                " is not an odd prime");
  // Directions (1, s) for s in Z_d plus (0, 1); offsets by a base point.
  std::vector<PhasePoint> directions;
  directions.emplace_back(0, 1);
  for (int s = 0; s < d; ++s) directions.emplace_back(1, s);

  std::vector<PhaseLine> lines;
  for (const auto& [dk, dl] : directions) {
    for (int offset = 0; offset < d; ++offset) {
      // base point on the axis transverse to the direction
      const PhasePoint base = (dk == 0) ? PhasePoint{offset, 0} : PhasePoint{0, offset};
      PhaseLine line;
      for (int t = 0; t < d; ++t) line.emplace_back(mod(base.first + t * dk, d), mod(base.second + t * dl, d));
      std::sort(line.begin(), line.end());
      lines.push_back(std::move(line));
    }
  }
  return lines;
}

BellCoefficients line_mixture(int d, const PhaseLine& line) {
  RealMatrix c = RealMatrix::Zero(d, d);
  for (const auto& [k, l] : line) c(k, l) += 1.0 / static_cast<double>(line.size());
  return BellCoefficients(std::move(c));
}

bool in_enclosure(const BellCoefficients& bc) {
  if (!bc.is_state()) throw std::invalid_argument("in_enclosure: coefficients are not a state");
  return bc.coeffs().maxCoeff() <= 1.0 / bc.d() + kStructureTol;
}

KernelResult kernel_distance(const BellCoefficients& bc, int iterations) {
  const int d = bc.d();
  const auto lines = phase_space_lines(d);
  const Eigen::Index n = d * d;
  std::vector<RealVector> vertices;
  for (const auto& line : lines)
    vertices.push_back(line_mixture(d, line).coeffs().reshaped());
  const RealVector target = bc.coeffs().reshaped();

  std::vector<double> weights(lines.size(), 1.0 / static_cast<double>(lines.size()));
  RealVector x = RealVector::Zero(n);
  for (std::size_t i = 0; i < vertices.size(); ++i) x += weights[i] * vertices[i];

  for (int it = 0; it < iterations; ++it) {
    const RealVector grad = x - target;
    std::size_t best = 0;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const double score = grad.dot(vertices[i]);
      if (score < best_score) best_score = score, best = i;
    }
    const RealVector step = vertices[best] - x;
    const double denom = step.squaredNorm();
    if (denom == 0.0) break;
    const double gamma = std::clamp(-grad.dot(step) / denom, 0.0, 1.0);
    if (gamma == 0.0) break;
    for (double& w : weights) w *= (1.0 - gamma);
    weights[best] += gamma;
    x += gamma * step;
  }
  return {(x - target).norm(), std::move(weights)};
}

BipartiteOperator slice_state(double alpha, double beta, const BipartiteOperator& rho_a,
                              const BipartiteOperator& rho_b) {
  const int n = rho_a.dim();
  const double mixed = (1.0 - alpha - beta) / n;
  return mixed * BipartiteOperator::identity(rho_a.dA(), rho_a.dB()) + alpha * rho_a +
         beta * rho_b;
}

SliceSpec default_slice_spec(const BipartiteOperator& rho_a, const BipartiteOperator& rho_b,
                             int steps) {
  auto is_state = [&](double a, double b) {
    return min_eigenvalue(slice_state(a, b, rho_a, rho_b).matrix()) >= -kPositivityTol;
  };
  constexpr int kRays = 360;
  constexpr double kCap = 1e3;
  double lo = 0.0, hi = 0.0;
  for (int r = 0; r < kRays; ++r) {
    const double theta = 2.0 * std::numbers::pi * r / kRays;
    const double ca = std::cos(theta), cb = std::sin(theta);
    double inside = 0.0, outside = 1.0;
    while (outside < kCap && is_state(outside * ca, outside * cb)) inside = outside, outside *= 2.0;
    if (outside >= kCap) {
      inside = kCap;
    } else {
      for (int it = 0; it < 45; ++it) {
        const double mid = 0.5 * (inside + outside);
        (is_state(mid * ca, mid * cb) ? inside : outside) = mid;
      }
    }
    lo = std::min({lo, inside * ca, inside * cb});
    hi = std::max({hi, inside * ca, inside * cb});
  }
  const double pad = 0.02 * (hi - lo);
  SliceSpec spec;
  spec.alpha_min = spec.beta_min = lo - pad;
  spec.alpha_max = spec.beta_max = hi + pad;
  spec.alpha_steps = spec.beta_steps = steps;
  return spec;
}

namespace {

double grid_value(double lo, double hi, int steps, int i) {
  if (steps == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
}

}  // namespace

SliceGrid scan_slice(const SliceSpec& spec, const BipartiteOperator& rho_a,
                     const BipartiteOperator& rho_b, const std::vector<NamedOperator>& witnesses) {
  if (spec.alpha_steps < 1 || spec.beta_steps < 1)
    throw std::invalid_argument("scan_slice: grid needs at least one node per axis");
  if (rho_a.dA() != rho_b.dA() || rho_a.dB() != rho_b.dB())
    throw std::invalid_argument("scan_slice: state dimensions differ");
  for (const auto& w : witnesses) {
    if (w.op.dA() != rho_a.dA() || w.op.dB() != rho_a.dB())
      throw std::invalid_argument("scan_slice: witness " + w.name + " has wrong dimensions");
    if (!w.op.is_hermitian(kHermitianInputTol))
      throw std::invalid_argument("scan_slice: witness " + w.name + " is not Hermitian");
  }

  SliceGrid grid;
  grid.spec = spec;
  for (const auto& w : witnesses) grid.witness_names.push_back(w.name);
  grid.points.resize(static_cast<std::size_t>(spec.alpha_steps) * spec.beta_steps);

  const bool square = rho_a.dA() == rho_a.dB();
  detail::parallel_for(grid.points.size(), [&](std::size_t idx) {
    const int ia = static_cast<int>(idx / spec.beta_steps);
    const int ib = static_cast<int>(idx % spec.beta_steps);
    SlicePoint p;
    p.alpha = grid_value(spec.alpha_min, spec.alpha_max, spec.alpha_steps, ia);
    p.beta = grid_value(spec.beta_min, spec.beta_max, spec.beta_steps, ib);
    const BipartiteOperator rho = slice_state(p.alpha, p.beta, rho_a, rho_b);
    p.min_eig = min_eigenvalue(rho.matrix());
    p.is_state = p.min_eig >= -kPositivityTol;
    p.min_ppt_eig = min_eigenvalue(partial_transpose(rho).matrix());
    p.is_ppt = p.is_state && p.min_ppt_eig >= -kPositivityTol;
    if (square && p.is_state) {
      const auto dec = bell_decode(rho);
      p.in_enclosure = dec.coeffs.coeffs().maxCoeff() <= 1.0 / rho.dA() + kStructureTol;
    }
    for (const auto& w : witnesses)
      p.witness_values.push_back(trace_product(w.op.matrix(), rho.matrix()).real());
    grid.points[idx] = std::move(p);
  });
  return grid;
}

std::vector<std::pair<int, int>> ppt_asymmetric_pairs(const SliceGrid& grid, double tol) {
  const SliceSpec& s = grid.spec;
  if (s.alpha_steps != s.beta_steps || s.alpha_min != s.beta_min || s.alpha_max != s.beta_max)
    throw std::invalid_argument("ppt_asymmetric_pairs: grid is not symmetric in alpha/beta");
  auto score = [](const SlicePoint& p) { return std::min(p.min_eig, p.min_ppt_eig); };
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < s.alpha_steps; ++i)
    for (int j = i + 1; j < s.beta_steps; ++j) {
      const double a = score(grid.at(i, j)), b = score(grid.at(j, i));
      const bool a_ppt = a >= -kPositivityTol, b_ppt = b >= -kPositivityTol;
      if ((a_ppt && b < -tol) || (b_ppt && a < -tol)) out.emplace_back(i, j);
    }
  return out;
}

}  // namespace ew
