#include "ewit/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ew::io {

namespace {

json real_rows(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd rows_to_real(const json& rows, Eigen::Index n, const char* field) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
    throw std::invalid_argument(std::string("field '") + field + "' must have " + std::to_string(n) + " rows");
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
      throw std::invalid_argument(std::string("row ") + std::to_string(r) + " of '" + field +
                                  "' must have " + std::to_string(n) + " entries");
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!row[c].is_number()) throw std::invalid_argument(std::string("non-numeric entry in '") + field + "'");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

int positive_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() <= 0)
    throw std::invalid_argument(std::string("field '") + key + "' must be a positive integer");
  return j[key].get<int>();
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json complex_json(cplx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

json operator_to_json(const BipartiteOperator& op) {
  return json{{"dA", op.dA()},
              {"dB", op.dB()},
              {"re", real_rows(op.matrix().real())},
              {"im", real_rows(op.matrix().imag())}};
}

BipartiteOperator operator_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("operator JSON must be an object");
  const int dA = positive_int(j, "dA");
  const int dB = positive_int(j, "dB");
  const Eigen::Index n = dA * dB;
  if (!j.contains("re") || !j.contains("im")) throw std::invalid_argument("operator JSON needs 're' and 'im'");
  const Eigen::MatrixXd re = rows_to_real(j["re"], n, "re");
  const Eigen::MatrixXd im = rows_to_real(j["im"], n, "im");
  Matrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return {dA, dB, std::move(m)};
}

json bell_to_json(const BellCoefficients& bc) { return json{{"d", bc.d()}, {"coeffs", real_rows(bc.coeffs())}}; }

BellCoefficients bell_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("Bell coefficient JSON must be an object");
  const int d = positive_int(j, "d");
  if (!j.contains("coeffs")) throw std::invalid_argument("Bell coefficient JSON needs 'coeffs'");
  return BellCoefficients(rows_to_real(j["coeffs"], d, "coeffs"));
}

json mubs_to_json(const MubSet& set) {
  json bases = json::array();
  for (const Basis& basis : set.bases) {
    json vectors = json::array();
    for (const Vector& v : basis) {
      json comps = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) comps.push_back({v(i).real(), v(i).imag()});
      vectors.push_back(std::move(comps));
    }
    bases.push_back(std::move(vectors));
  }
  return json{{"d", set.d}, {"bases", std::move(bases)}};
}

json product_vector_to_json(const ProductVector& pv) {
  auto vec = [](const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
    return out;
  };
  return json{{"a", vec(pv.a)}, {"b", vec(pv.b)}};
}

json witness_report_to_json(const WitnessReport& rep) {
  json detected = json::object();
  for (const auto& nv : rep.detected_states) detected[nv.name] = nv.value;
  return json{{"spectrum", rep.spectrum},
              {"n_negative", rep.n_negative},
              {"min_product_value", rep.min_product_value},
              {"max_product_value", rep.max_product_value},
              {"mu_bracket", {rep.mu_bracket.first, rep.mu_bracket.second}},
              {"detected_states", detected},
              {"caveat", "product-state extrema come from see-saw optimization: evidence, not proof"}};
}

json span_report_to_json(const SpanReport& rep) {
  json j{{"zero_values", rep.zero_values},
         {"rank_direct", rep.rank_direct},
         {"rank_conjugate", rep.rank_conjugate},
         {"full_dim", rep.full_dim},
         {"bi_spanning_evidence", rep.bi_spanning()}};
  if (rep.square) {
    j["det_direct"] = complex_json(rep.det_direct);
    j["det_conjugate"] = complex_json(rep.det_conjugate);
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string slice_csv_header(const SliceGrid& grid) {
  std::string h = "alpha,beta,is_state,min_eig,is_ppt,min_ppt_eig,in_enclosure";
  for (const auto& name : grid.witness_names) h += "," + name;
  return h;
}

void write_slice_csv(std::ostream& out, const SliceGrid& grid) {
  out << slice_csv_header(grid) << '\n';
  for (const SlicePoint& p : grid.points) {
    out << fmt12(p.alpha) << ',' << fmt12(p.beta) << ',' << (p.is_state ? 1 : 0) << ',' << fmt12(p.min_eig)
        << ',' << (p.is_ppt ? 1 : 0) << ',' << fmt12(p.min_ppt_eig) << ',' << (p.in_enclosure ? 1 : 0);
    for (double v : p.witness_values) out << ',' << fmt12(v);
    out << '\n';
  }
}

}  // namespace ew::io
