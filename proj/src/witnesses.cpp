#include "ewit/witnesses.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ew {

namespace {

using IntTable = std::vector<std::vector<int>>;

BipartiteOperator from_table(int d, const IntTable& table, double scale) {
  const int n = d * d;
  if (static_cast<int>(table.size()) != n) throw std::logic_error("catalog table has wrong size");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = table[r][c] * scale;
  return {d, d, std::move(m)};
}

// Qutrit witnesses and states; zeros written out explicitly.
const IntTable kWGamma12 = {
    {0, 0, 0, 0, 1, 0, 0, 0, 1},    {0, 3, 0, 0, 0, -2, -2, 0, 0}, {0, 0, 3, -2, 0, 0, 0, -2, 0},
    {0, 0, -2, 3, 0, 0, 0, -2, 0},  {1, 0, 0, 0, 0, 0, 0, 0, 1},   {0, -2, 0, 0, 0, 3, -2, 0, 0},
    {0, -2, 0, 0, 0, -2, 3, 0, 0},  {0, 0, -2, -2, 0, 0, 0, 3, 0}, {1, 0, 0, 0, 1, 0, 0, 0, 0},
};

const IntTable kWGamma34 = {
    {4, 0, 0, 0, -1, 0, 0, 0, -1}, {0, 1, 0, 0, 0, 2, 2, 0, 0}, {0, 0, 1, 2, 0, 0, 0, 2, 0},
    {0, 0, 2, 1, 0, 0, 0, 2, 0},   {-1, 0, 0, 0, 4, 0, 0, 0, -1}, {0, 2, 0, 0, 0, 1, 2, 0, 0},
    {0, 2, 0, 0, 0, 2, 1, 0, 0},   {0, 0, 2, 2, 0, 0, 0, 1, 0}, {-1, 0, 0, 0, -1, 0, 0, 0, 4},
};

// times 1/15
const IntTable kRhoGamma = {
    {3, 0, 0, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 1, 1, 0, 0, 0, 1, 0},
    {0, 0, 1, 1, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 3, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 1, 1, 0, 0},
    {0, 1, 0, 0, 0, 1, 1, 0, 0}, {0, 0, 1, 1, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 0, 0, 3},
};

const IntTable kRhoGammaC = {
    {1, 0, 0, 0, 1, 0, 0, 0, 1},    {0, 2, 0, 0, 0, -1, -1, 0, 0}, {0, 0, 2, -1, 0, 0, 0, -1, 0},
    {0, 0, -1, 2, 0, 0, 0, -1, 0},  {1, 0, 0, 0, 1, 0, 0, 0, 1},   {0, -1, 0, 0, 0, 2, -1, 0, 0},
    {0, -1, 0, 0, 0, -1, 2, 0, 0},  {0, 0, -1, -1, 0, 0, 0, 2, 0}, {1, 0, 0, 0, 1, 0, 0, 0, 1},
};

// Bell-coefficient tables
const IntTable kBellW = {{2, -1, -1}, {-1, 5, 5}, {-1, 5, 5}};
const IntTable kBellWc = {{2, 5, 5}, {5, -1, -1}, {5, -1, -1}};
const IntTable kBellC = {{1, 1, 1}, {1, 0, 0}, {1, 0, 0}};      // 1/5
const IntTable kBellCc = {{1, 0, 0}, {0, 1, 1}, {0, 1, 1}};     // 1/5
const IntTable kBellRho3 = {{0, 1, 1}, {1, 0, 0}, {1, 0, 0}};   // 1/4
const IntTable kBellRho4 = {{0, 0, 0}, {0, 1, 1}, {0, 1, 1}};   // 1/4

const IntTable kKappaW1 = {{4, -1, -1, -1, -1}, {-1, -1, 9, 9, 9}, {-1, 9, -1, 9, 9},
                           {-1, 9, 9, -1, 9},   {-1, 9, 9, 9, -1}};
const IntTable kKappaW2 = {{4, 9, 9, 9, 9}, {9, 9, -1, -1, -1}, {9, -1, 9, -1, -1},
                           {9, -1, -1, 9, -1}, {9, -1, -1, -1, 9}};
const IntTable kKappaW3 = {{4, -1, -1, -1, -1}, {9, 9, -1, 9, -1}, {9, 9, 9, -1, -1},
                           {9, -1, -1, 9, 9},   {9, -1, 9, -1, 9}};
const IntTable kKappaW4 = {{4, 9, 9, 9, 9}, {-1, -1, 9, -1, 9}, {-1, -1, -1, 9, 9},
                           {-1, 9, 9, -1, -1}, {-1, 9, -1, 9, -1}};

// times 1/13
const IntTable kCoefRho1 = {{1, 1, 1, 1, 1}, {1, 1, 0, 0, 0}, {1, 0, 1, 0, 0},
                            {1, 0, 0, 1, 0}, {1, 0, 0, 0, 1}};
const IntTable kCoefRho2 = {{1, 0, 0, 0, 0}, {0, 0, 1, 1, 1}, {0, 1, 0, 1, 1},
                            {0, 1, 1, 0, 1}, {0, 1, 1, 1, 0}};
const IntTable kCoefRho3Printed = {{1, 0, 0, 0, 0}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1},
                                   {0, 1, 1, 0, 0}, {0, 1, 0, 1, 0}};
const IntTable kCoefRho3Corrected = {{1, 1, 1, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 0, 1, 1},
                                     {0, 1, 1, 0, 0}, {0, 1, 0, 1, 0}};
const IntTable kCoefRho4 = {{1, 0, 0, 0, 0}, {1, 1, 0, 1, 0}, {1, 1, 1, 0, 0},
                            {1, 0, 0, 1, 1}, {1, 0, 1, 0, 1}};

CatalogEntry bell_entry(std::string name, std::string description, CatalogKind kind,
                        const IntTable& table, double scale, std::string flag = {}) {
  BellCoefficients bc = BellCoefficients::scaled(table, scale);
  BipartiteOperator op = bell_encode(bc);
  return {std::move(name), std::move(description), kind, std::move(op), std::move(bc),
          std::move(flag)};
}

std::optional<int> parse_dim_suffix(std::string_view name, std::string_view prefix) {
  if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto digits = name.substr(prefix.size());
  int d = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || d < 2) return std::nullopt;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

GammaSplit::GammaSplit(int d, std::vector<int> gamma) : d_(d), gamma_(std::move(gamma)) {
  std::sort(gamma_.begin(), gamma_.end());
  if (gamma_.empty()) throw std::invalid_argument("GammaSplit: gamma must be nonempty");
  if (std::adjacent_find(gamma_.begin(), gamma_.end()) != gamma_.end())
    throw std::invalid_argument("GammaSplit: repeated label");
  if (gamma_.front() < 1 || gamma_.back() > d + 1)
    throw std::invalid_argument("GammaSplit: labels must lie in 1..d+1");
  if (static_cast<int>(gamma_.size()) >= d + 1)
    throw std::invalid_argument("GammaSplit: gamma must be a proper subset");
}

std::vector<int> GammaSplit::complement() const {
  std::vector<int> out;
  for (int a = 1; a <= d_ + 1; ++a)
    if (!std::binary_search(gamma_.begin(), gamma_.end(), a)) out.push_back(a);
  return out;
}

std::string GammaSplit::label() const {
  std::string s;
  for (int a : gamma_) s += std::to_string(a);
  return s;
}

Matrix dephase(const Basis& basis, const Matrix& rho) {
  if (basis.empty()) throw std::invalid_argument("dephase: empty basis");
  const auto n = basis.front().size();
  if (rho.rows() != n || rho.cols() != n || static_cast<Eigen::Index>(basis.size()) != n)
    throw std::invalid_argument("dephase: dimension mismatch");
  Matrix out = Matrix::Zero(n, n);
  for (const Vector& v : basis) {
    const cplx amp = v.dot(rho * v);  // <v|rho|v>
    out += amp * projector(v);
  }
  return out;
}

BipartiteOperator dephase(const Basis& basis, const BipartiteOperator& rho) {
  return {rho.dA(), rho.dB(), dephase(basis, rho.matrix())};
}

Matrix depolarize(const Matrix& rho) {
  const auto d = rho.rows();
  return Matrix::Identity(d, d) * (rho.trace() / static_cast<double>(d));
}

Matrix phi_gamma_apply(const GammaSplit& split, const MubSet& mubs, const Matrix& rho) {
  if (split.d() != 3 || split.gamma().size() != 2 || mubs.d != 3)
    throw std::invalid_argument("phi_gamma_apply: only the qutrit two-element split is defined");
  Matrix out = 2.0 * depolarize(rho);
  for (int a : split.complement()) out += dephase(mubs.bases.at(a - 1), rho);
  for (int a : split.gamma()) out -= dephase(mubs.bases.at(a - 1), rho);
  return out;
}

BipartiteOperator choi(const LinearMap& map, int d) {
  Matrix out = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) {
      Matrix e = Matrix::Zero(d, d);
      e(k, l) = 1.0;
      const Matrix image = map(e);
      if (image.rows() != d || image.cols() != d)
        throw std::invalid_argument("choi: map changes the matrix size");
      out.block(k * d, l * d, d, d) = image;
    }
  return {d, d, std::move(out)};
}

BipartiteOperator gamma_witness(const GammaSplit& split, const MubSet& mubs) {
  const auto map = [&](const Matrix& x) { return phi_gamma_apply(split, mubs, x); };
  return static_cast<double>(split.d()) * choi(map, split.d());
}

BipartiteOperator circulant_witness(const CirculantParams& p) {
  const cplx a{p.a, 0}, b{p.b, 0}, x{p.x, 0}, z = p.z, zc = std::conj(p.z), o{};
  Matrix m(9, 9);
  m << a, o, o, o, x, o, o, o, x,  //
      o, b, o, o, o, z, zc, o, o,  //
      o, o, b, zc, o, o, o, z, o,  //
      o, o, z, b, o, o, o, zc, o,  //
      x, o, o, o, a, o, o, o, x,   //
      o, zc, o, o, o, b, z, o, o,  //
      o, z, o, o, o, zc, b, o, o,  //
      o, o, zc, z, o, o, o, b, o,  //
      x, o, o, o, x, o, o, o, a;
  return {3, 3, std::move(m)};
}

CirculantParams circulant_params(const GammaSplit& split) {
  if (split.d() != 3 || split.gamma().size() != 2)
    throw std::invalid_argument("circulant_params: qutrit two-element split required");
  const double r3 = std::sqrt(3.0);
  const std::string label = split.label();
  if (label == "12") return {0, 3, 1, {-2, 0}};
  if (label == "13") return {0, 3, 1, {1, -r3}};
  if (label == "14") return {0, 3, 1, {1, r3}};
  if (label == "34") return {4, 1, -1, {2, 0}};
  if (label == "24") return {4, 1, -1, {-1, r3}};
  return {4, 1, -1, {-1, -r3}};  // "23"
}

BipartiteOperator mirror_partner(const BipartiteOperator& w, double mu) {
  return mu * BipartiteOperator::identity(w.dA(), w.dB()) - w;
}

MirrorResult find_mirror_mu(const BipartiteOperator& w, const SeeSawConfig& cfg) {
  if (!w.is_hermitian(kHermitianInputTol))
    throw std::invalid_argument("find_mirror_mu: witness is not Hermitian");
  const SeeSawResult best = max_product_expectation(w, cfg);
  BipartiteOperator partner = mirror_partner(w, best.value);
  const SeeSawResult partner_min = min_product_expectation(partner, cfg);
  const double lambda_max = max_eigenvalue(w.matrix());
  const double partner_lambda_max = max_eigenvalue(partner.matrix());
  return {best.value,
          lambda_max,
          std::move(partner),
          partner_min.value,
          partner_lambda_max,
          lambda_max > best.value + kEigenTol,
          best.all_converged && partner_min.all_converged};
}

Matrix mirror_local_unitary() {
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const cplx wc = std::conj(w), one{1.0, 0.0};
  Matrix u(3, 3);
  u << one, one, w,  //
      one, w, one,   //
      wc, w, w;
  return u / std::sqrt(3.0);
}

BipartiteOperator flip_operator(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) f(k * d + l, l * d + k) = 1.0;
  return {d, d, std::move(f)};
}

BipartiteOperator max_entangled_projector(int d) { return bell_projector(d, 0, 0); }

BipartiteOperator reduction_witness(int d) {
  return BipartiteOperator::identity(d, d) - static_cast<double>(d) * max_entangled_projector(d);
}

std::vector<std::string> catalog_names() {
  return {"W_gamma_12", "W_gamma_13", "W_gamma_14", "W_gamma_34", "W_gamma_24", "W_gamma_23",
          "rho_gamma",  "rho_gamma_c", "rho3_d3",   "rho4_d3",    "flip_d3",    "reduction_d3",
          "W1_d5",      "W2_d5",      "W3_d5",      "W4_d5",      "rho1_d5",    "rho2_d5",
          "rho3_d5",    "rho3c_d5",   "rho4_d5"};
}

CatalogEntry catalog(std::string_view name) {
  using K = CatalogKind;
  if (name == "W_gamma_12")
    return {"W_gamma_12", "qutrit MUB witness, gamma = {1,2}", K::Witness,
            from_table(3, kWGamma12, 1.0), BellCoefficients::scaled(kBellW, 1.0), {}};
  if (name == "W_gamma_34")
    return {"W_gamma_34", "qutrit MUB witness, gamma = {3,4} (mirror of {1,2})", K::Witness,
            from_table(3, kWGamma34, 1.0), BellCoefficients::scaled(kBellWc, 1.0), {}};
  for (const char* label : {"13", "14", "24", "23"}) {
    if (name == std::string("W_gamma_") + label) {
      const GammaSplit split(3, {label[0] - '0', label[1] - '0'});
      return {std::string(name), "qutrit MUB witness from the circulant table, gamma = {" +
                                     std::string(1, label[0]) + "," + std::string(1, label[1]) + "}",
              K::Witness, circulant_witness(circulant_params(split)), std::nullopt, {}};
    }
  }
  if (name == "rho_gamma")
    return {"rho_gamma", "PPT entangled state detected by W_gamma_12", K::State,
            from_table(3, kRhoGamma, 1.0 / 15.0), BellCoefficients::scaled(kBellC, 0.2), {}};
  if (name == "rho_gamma_c")
    return {"rho_gamma_c", "PPT entangled state detected by W_gamma_34", K::State,
            from_table(3, kRhoGammaC, 1.0 / 15.0), BellCoefficients::scaled(kBellCc, 0.2), {}};
  if (name == "rho3_d3")
    return bell_entry("rho3_d3", "(P01+P02+P10+P20)/4, supported on the CES of W_gamma_12",
                      K::State, kBellRho3, 0.25);
  if (name == "rho4_d3")
    return bell_entry("rho4_d3", "(P11+P12+P21+P22)/4, supported on the CES of W_gamma_34",
                      K::State, kBellRho4, 0.25);
  if (name == "W1_d5") return bell_entry("W1_d5", "d=5 Bell-diagonal witness", K::Witness, kKappaW1, 1.0);
  if (name == "W2_d5") return bell_entry("W2_d5", "d=5 mirror of W1", K::Witness, kKappaW2, 1.0);
  if (name == "W3_d5") return bell_entry("W3_d5", "d=5 Bell-diagonal witness", K::Witness, kKappaW3, 1.0);
  if (name == "W4_d5") return bell_entry("W4_d5", "d=5 mirror of W3", K::Witness, kKappaW4, 1.0);
  if (name == "rho1_d5")
    return bell_entry("rho1_d5", "d=5 state detected by W1", K::State, kCoefRho1, 1.0 / 13.0);
  if (name == "rho2_d5")
    return bell_entry("rho2_d5", "d=5 state detected by W2", K::State, kCoefRho2, 1.0 / 13.0);
  if (name == "rho3_d5")
    return bell_entry("rho3_d5", "d=5 state for W3, coefficients verbatim", K::State,
                      kCoefRho3Printed, 1.0 / 13.0,
                      "as-printed, non-normalized: coefficient sum 9/13");
  if (name == "rho3c_d5")
    return bell_entry("rho3c_d5", "d=5 state for W3 with first row (1,1,1,1,1)/13", K::State,
                      kCoefRho3Corrected, 1.0 / 13.0,
                      "conjectured erratum, validated by tr(W3 rho3) = -8/13");
  if (name == "rho4_d5")
    return bell_entry("rho4_d5", "d=5 state detected by W4", K::State, kCoefRho4, 1.0 / 13.0);
  if (const auto d = parse_dim_suffix(name, "flip_d"))
    return {std::string(name), "swap operator, d = " + std::to_string(*d), K::Reference,
            flip_operator(*d), std::nullopt, {}};
  if (const auto d = parse_dim_suffix(name, "reduction_d"))
    return {std::string(name), "reduction-map witness 1 - d P+, d = " + std::to_string(*d),
            K::Reference, reduction_witness(*d), std::nullopt, {}};
  throw std::out_of_range("unknown catalog name: " + std::string(name));
}

}  // namespace ew
