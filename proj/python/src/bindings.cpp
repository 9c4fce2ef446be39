#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ewit/certify.hpp"
#include "ewit/io.hpp"
#include "ewit/linops.hpp"
#include "ewit/mub.hpp"
#include "ewit/reproduce.hpp"
#include "ewit/simplex.hpp"
#include "ewit/witnesses.hpp"

namespace py = pybind11;
using namespace ew;

namespace {

SeeSawConfig make_config(int restarts, int max_iterations, double tolerance, std::uint64_t seed) {
  SeeSawConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iterations = max_iterations;
  cfg.tolerance = tolerance;
  cfg.seed = seed;
  return cfg;
}

py::dict seesaw_dict(const SeeSawResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["a"] = Vector(r.vector.a);
  d["b"] = Vector(r.vector.b);
  d["best_restart"] = r.best_restart;
  d["all_converged"] = r.all_converged;
  d["monotone"] = r.monotone;
  return d;
}

#define SEESAW_ARGS                                                                                   \
  py::arg("restarts") = 64, py::arg("max_iterations") = 500, py::arg("tolerance") = 1e-12, \
      py::arg("seed") = 0

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement witness constructions and certification";

  py::class_<BipartiteOperator>(m, "BipartiteOperator")
      .def(py::init<int, int, Matrix>(), py::arg("dA"), py::arg("dB"), py::arg("matrix"))
      .def_static("identity", &BipartiteOperator::identity)
      .def_property_readonly("dA", &BipartiteOperator::dA)
      .def_property_readonly("dB", &BipartiteOperator::dB)
      .def_property_readonly("dim", &BipartiteOperator::dim)
      .def_property_readonly("matrix", [](const BipartiteOperator& op) { return Matrix(op.matrix()); })
      .def("trace", &BipartiteOperator::trace)
      .def("is_hermitian", &BipartiteOperator::is_hermitian, py::arg("tol") = kStructureTol)
      .def("__add__", [](const BipartiteOperator& a, const BipartiteOperator& b) { return a + b; })
      .def("__sub__", [](const BipartiteOperator& a, const BipartiteOperator& b) { return a - b; })
      .def("__rmul__", [](const BipartiteOperator& a, double s) { return s * a; })
      .def("__repr__", [](const BipartiteOperator& op) {
        std::ostringstream s;
        s << "BipartiteOperator(dA=" << op.dA() << ", dB=" << op.dB() << ")";
        return s.str();
      });

  m.def("partial_transpose", [](const BipartiteOperator& op, char side) {
    if (side != 'A' && side != 'B') throw py::value_error("side must be 'A' or 'B'");
    return partial_transpose(op, side == 'A' ? Subsystem::A : Subsystem::B);
  }, py::arg("op"), py::arg("side") = 'B');
  m.def("eigvalsh", [](const BipartiteOperator& op) { return RealVector(eig_hermitian(op).values); },
        "Eigenvalues in descending order.");

  // catalog and constructions
  m.def("catalog_names", &catalog_names);
  m.def("catalog", [](const std::string& name) { return catalog_operator(name); });
  m.def("catalog_flag", [](const std::string& name) { return catalog(name).flag; });
  m.def("gamma_witness", [](std::vector<int> gamma) { return gamma_witness(GammaSplit(3, std::move(gamma))); },
        py::arg("gamma"), "d * Choi matrix of Phi_gamma for a two-element qutrit split.");
  m.def("circulant_witness", [](double a, double b, double x, cplx z) { return circulant_witness({a, b, x, z}); });
  m.def("mirror_partner", &mirror_partner);
  m.def("mirror_local_unitary", &mirror_local_unitary);
  m.def("flip_operator", &flip_operator);
  m.def("reduction_witness", &reduction_witness);

  // MUBs
  m.def("build_mubs", [](int d) { return build_mubs(d).bases; }, "d+1 bases; each basis is a list of vectors.");
  m.def("qutrit_mubs", []() { return qutrit_mubs().bases; });
  m.def("verify_mub", [](int d, const std::vector<Basis>& bases) {
    const MubReport r = verify_mub(MubSet{d, bases});
    return py::make_tuple(r.orthonormality_violation, r.unbiasedness_violation);
  });

  // Bell-diagonal operators
  m.def("weyl", &weyl);
  m.def("bell_vector", &bell_vector);
  m.def("bell_projector", &bell_projector);
  m.def("bell_encode", [](const RealMatrix& c) { return bell_encode(BellCoefficients(c)); });
  m.def("bell_decode", [](const BipartiteOperator& op) {
    const BellDecomposition d = bell_decode(op);
    return py::make_tuple(RealMatrix(d.coeffs.coeffs()), d.residual);
  });
  m.def("phase_space_lines", &phase_space_lines);

  // certification
  m.def("detect", &detect);
  m.def("is_ppt", [](const BipartiteOperator& rho, double tol) {
    const PptResult r = is_ppt(rho, tol);
    return py::make_tuple(r.ppt, r.min_pt_eigenvalue);
  }, py::arg("rho"), py::arg("tol") = kPositivityTol);
  m.def("min_product_expectation", [](const BipartiteOperator& w, int r, int it, double tol, std::uint64_t seed) {
    return seesaw_dict(min_product_expectation(w, make_config(r, it, tol, seed)));
  }, py::arg("w"), SEESAW_ARGS);
  m.def("max_product_expectation", [](const BipartiteOperator& w, int r, int it, double tol, std::uint64_t seed) {
    return seesaw_dict(max_product_expectation(w, make_config(r, it, tol, seed)));
  }, py::arg("w"), SEESAW_ARGS);
  m.def("find_mirror_mu", [](const BipartiteOperator& w, int r, int it, double tol, std::uint64_t seed) {
    const MirrorResult res = find_mirror_mu(w, make_config(r, it, tol, seed));
    py::dict d;
    d["mu"] = res.mu;
    d["mu_upper"] = res.mu_upper;
    d["partner"] = res.partner;
    d["partner_min_product_value"] = res.partner_min_product_value;
    d["partner_is_witness"] = res.partner_is_witness;
    d["converged"] = res.converged;
    return d;
  }, py::arg("w"), SEESAW_ARGS);
  m.def("zero_family_d3", []() {
    std::vector<std::pair<Vector, Vector>> out;
    for (const auto& p : zero_family_d3_raw()) out.emplace_back(p.a, p.b);
    return out;
  }, "The nine unnormalized zero-set pairs of W_gamma_12.");
  m.def("span_report_d3", [](bool rotated) {
    const auto fam = reorder(rotated ? rotated_zero_family_d3() : zero_family_d3_raw(), r_matrix_row_order());
    const SpanReport r = span_report(catalog_operator(rotated ? "W_gamma_34" : "W_gamma_12"), fam);
    py::dict d;
    d["zero_values"] = r.zero_values;
    d["rank_direct"] = r.rank_direct;
    d["rank_conjugate"] = r.rank_conjugate;
    d["det_direct"] = r.det_direct;
    d["det_conjugate"] = r.det_conjugate;
    d["bi_spanning"] = r.bi_spanning();
    return d;
  }, py::arg("rotated") = false);
  m.def("negative_eigenspace", &negative_eigenspace);
  m.def("local_decomposition", [](const BipartiteOperator& w) {
    const LocalDecomposition d = local_decomposition(w);
    return py::make_tuple(RealMatrix(d.coefficients), d.reconstruction_error);
  });

  // slices
  m.def("slice_state", &slice_state);
  m.def("scan_slice", [](const BipartiteOperator& ra, const BipartiteOperator& rb,
                         const std::vector<std::pair<std::string, BipartiteOperator>>& witnesses, int grid) {
    std::vector<NamedOperator> ws;
    for (const auto& [name, op] : witnesses) ws.push_back({name, op});
    const SliceGrid g = scan_slice(default_slice_spec(ra, rb, grid), ra, rb, ws);
    std::ostringstream csv;
    io::write_slice_csv(csv, g);
    return csv.str();
  }, py::arg("rho_a"), py::arg("rho_b"), py::arg("witnesses") = std::vector<std::pair<std::string, BipartiteOperator>>{},
     py::arg("grid") = 201, "Scan the default square range; returns the slice CSV text.");

  // serialization and reproduction
  m.def("operator_to_json", [](const BipartiteOperator& op) { return io::operator_to_json(op).dump(); });
  m.def("operator_from_json", [](const std::string& s) { return io::operator_from_json(io::json::parse(s)); });
  m.def("reproduce", [](const std::string& scope, std::uint64_t seed) {
    return records_to_json(run_reproduce(parse_scope(scope), make_config(64, 500, 1e-12, seed))).dump();
  }, py::arg("scope") = "d3", py::arg("seed") = 0, "Claim records as a JSON string.");
}
