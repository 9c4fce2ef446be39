#include "ewit/mub.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ew {

namespace {

cplx root_of_unity(int d, long long power) {
  const long long p = ((power % d) + d) % d;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(p) / d);
}

Vector qutrit(cplx c1, cplx c2, cplx c3) {
  Vector v(3);
  v << c1, c2, c3;
  return v / std::sqrt(3.0);
}

}  // namespace

bool is_prime(int n) {
  if (n < 2) return false;
  for (int f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

MubSet qutrit_mubs() {
  const cplx one{1.0, 0.0};
  const cplx w = root_of_unity(3, 1);
  const cplx wc = std::conj(w);

  MubSet set{3, {}};
  Basis computational;
  for (int k = 0; k < 3; ++k) computational.push_back(Vector::Unit(3, k).cast<cplx>());
  set.bases.push_back(std::move(computational));
  set.bases.push_back({qutrit(one, one, one), qutrit(one, wc, w), qutrit(one, w, wc)});
  set.bases.push_back({qutrit(one, one, wc), qutrit(one, w, w), qutrit(one, wc, one)});
  set.bases.push_back({qutrit(one, one, w), qutrit(one, wc, wc), qutrit(one, w, one)});
  return set;
}

MubSet build_mubs(int d) {
  if (d % 2 == 0 || !is_prime(d))
    throw std::invalid_argument("build_mubs: d = " + std::to_string(d) +
                                " is not an odd prime");
  MubSet set{d, {}};
  Basis computational;
  for (int k = 0; k < d; ++k) computational.push_back(Vector::Unit(d, k).cast<cplx>());
  set.bases.push_back(std::move(computational));

  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int a = 1; a <= d; ++a) {
    Basis basis;
    for (int k = 0; k < d; ++k) {
      Vector v(d);
      for (long long j = 0; j < d; ++j) v(j) = norm * root_of_unity(d, a * j * j + j * k);
      basis.push_back(std::move(v));
    }
    set.bases.push_back(std::move(basis));
  }
  return set;
}

MubReport verify_mub(const MubSet& set) {
  MubReport report;
  const double inv_d = 1.0 / set.d;
  for (std::size_t a = 0; a < set.bases.size(); ++a) {
    const Basis& ba = set.bases[a];
    for (std::size_t k = 0; k < ba.size(); ++k)
      for (std::size_t l = 0; l < ba.size(); ++l) {
        const double delta = (k == l) ? 1.0 : 0.0;
        report.orthonormality_violation = std::max(
            report.orthonormality_violation, std::abs(ba[k].dot(ba[l]) - cplx(delta, 0.0)));
      }
    for (std::size_t b = a + 1; b < set.bases.size(); ++b)
      for (const Vector& u : ba)
        for (const Vector& v : set.bases[b])
          report.unbiasedness_violation =
              std::max(report.unbiasedness_violation, std::abs(std::norm(u.dot(v)) - inv_d));
  }
  return report;
}

}  // namespace ew
