// ew: command-line front end for the witness library.
//
// Exit codes: 0 success, 1 a reproduced claim failed, 2 usage or input error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ewit/certify.hpp"
#include "ewit/io.hpp"
#include "ewit/mub.hpp"
#include "ewit/reproduce.hpp"
#include "ewit/simplex.hpp"
#include "ewit/witnesses.hpp"

namespace {

using namespace ew;
using io::json;

constexpr const char* kEvidenceCaveat =
    "note: product-state extrema come from see-saw optimization and are numerical evidence, not proofs";

/// A path to an operator JSON file, a Bell-coefficient JSON file
/// ({"d", "coeffs"}, e.g. user-supplied d=7 witnesses), or a catalog name.
NamedOperator load_operator(const std::string& ref) {
  if (std::filesystem::is_regular_file(ref)) {
    const json j = io::read_json_file(ref);
    const std::string stem = std::filesystem::path(ref).stem().string();
    if (j.is_object() && j.contains("coeffs")) return {stem, bell_encode(io::bell_from_json(j))};
    return {stem, io::operator_from_json(j)};
  }
  try {
    return {ref, catalog_operator(ref)};
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("'" + ref + "' is neither a file nor a catalog name (see `ew catalog --list`)");
  }
}

void emit_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << j.dump(2) << '\n';
  else
    io::write_json_file(out, j);
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(cplx z) { return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i"; }

SeeSawConfig seesaw_config(int restarts, std::uint64_t seed) {
  SeeSawConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

const char* kind_name(CatalogKind k) {
  switch (k) {
    case CatalogKind::Witness: return "witness";
    case CatalogKind::State: return "state";
    case CatalogKind::Reference: return "reference";
  }
  return "?";
}

// ---------------------------------------------------------------------------

struct CatalogArgs {
  bool list = false;
  std::string name, out;
};

int run_catalog(const CatalogArgs& a) {
  if (a.list || a.name.empty()) {
    for (const auto& n : catalog_names()) {
      const CatalogEntry e = catalog(n);
      std::cout << n << '\t' << kind_name(e.kind) << '\t' << e.description;
      if (!e.flag.empty()) std::cout << " [" << e.flag << ']';
      std::cout << '\n';
    }
    std::cout << "flip_dN\treference\tswap operator for any N >= 2\n"
              << "reduction_dN\treference\treduction witness 1 - N P+ for any N >= 2\n";
    return 0;
  }
  const CatalogEntry e = catalog(a.name);
  if (!e.flag.empty()) std::cerr << a.name << ": " << e.flag << '\n';
  emit_json(io::operator_to_json(e.op), a.out);
  return 0;
}

struct MubArgs {
  int d = 3;
  std::string out;
  bool displayed = false;
};

int run_mubs(const MubArgs& a) {
  const MubSet set = a.displayed ? qutrit_mubs() : build_mubs(a.d);
  const MubReport r = verify_mub(set);
  std::cerr << "d = " << set.d << ", " << set.bases.size() << " bases; orthonormality violation "
            << fmt(r.orthonormality_violation) << ", unbiasedness violation " << fmt(r.unbiasedness_violation)
            << (r.passes() ? " (pass)" : " (FAIL)") << '\n';
  emit_json(io::mubs_to_json(set), a.out);
  return r.passes() ? 0 : 1;
}

struct MirrorArgs {
  std::string in, out;
  int restarts = 64;
  std::uint64_t seed = 0;
};

int run_mirror(const MirrorArgs& a) {
  const NamedOperator w = load_operator(a.in);
  const MirrorResult m = find_mirror_mu(w.op, seesaw_config(a.restarts, a.seed));
  const std::string out = a.out.empty() ? w.name + "_mirror.json" : a.out;
  io::write_json_file(out, io::operator_to_json(m.partner));
  std::cout << "mu bracket: [" << fmt(m.mu) << ", " << fmt(m.mu_upper) << "]  (best product maximum, lambda_max)\n"
            << "partner: " << out << '\n'
            << "partner min product value: " << fmt(m.partner_min_product_value) << '\n'
            << "partner lambda_max: " << fmt(m.partner_max_eigenvalue) << '\n'
            << "partner is a witness candidate: " << (m.partner_is_witness ? "yes" : "no") << '\n'
            << "see-saw converged: " << (m.converged ? "yes" : "no") << '\n'
            << kEvidenceCaveat << '\n';
  return 0;
}

struct CertifyArgs {
  std::string witness;
  std::vector<std::string> states;
  bool json = false;
  int restarts = 64;
  std::uint64_t seed = 0;
};

int run_certify(const CertifyArgs& a) {
  const NamedOperator w = load_operator(a.witness);
  std::vector<NamedOperator> states;
  for (const auto& s : a.states) states.push_back(load_operator(s));
  const SeeSawConfig cfg = seesaw_config(a.restarts, a.seed);
  const WitnessReport rep = witness_report(w.op, states, cfg);
  std::vector<PptResult> ppt;
  for (const auto& s : states) ppt.push_back(is_ppt(s.op));

  if (a.json) {
    json j = io::witness_report_to_json(rep);
    j["witness"] = w.name;
    json st = json::object();
    for (std::size_t i = 0; i < states.size(); ++i)
      st[states[i].name] = {{"tr_W_rho", rep.detected_states[i].value},
                            {"detected", rep.detected_states[i].value < 0},
                            {"ppt", ppt[i].ppt},
                            {"min_pt_eigenvalue", ppt[i].min_pt_eigenvalue}};
    j["states"] = st;
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << "witness: " << w.name << " (" << w.op.dA() << " x " << w.op.dB() << ")\nspectrum:";
  for (double v : rep.spectrum) std::cout << ' ' << fmt(v);
  std::cout << "\nn_negative: " << rep.n_negative << '\n'
            << "min product value: " << fmt(rep.min_product_value)
            << (rep.min_product_value < -1e-8 ? "  (block positivity refuted)" : "  (block-positive, numerically)")
            << '\n'
            << "max product value: " << fmt(rep.max_product_value) << '\n'
            << "mu bracket: [" << fmt(rep.mu_bracket.first) << ", " << fmt(rep.mu_bracket.second) << "]\n";
  for (std::size_t i = 0; i < states.size(); ++i)
    std::cout << "tr(W " << states[i].name << ") = " << fmt(rep.detected_states[i].value)
              << (rep.detected_states[i].value < 0 ? "  detected" : "  not detected") << "; "
              << (ppt[i].ppt ? "PPT" : "NPT") << " (min PT eigenvalue " << fmt(ppt[i].min_pt_eigenvalue) << ")\n";
  std::cout << kEvidenceCaveat << '\n';
  return 0;
}

struct SpanArgs {
  std::string witness = "W_gamma_12";
  std::string family = "d3-zero";
  bool json = false;
};

int run_span(const SpanArgs& a) {
  const NamedOperator w = load_operator(a.witness);
  std::vector<ProductVector> pairs;
  std::string det1_exact, det2_exact;
  if (a.family == "d3-zero") {
    pairs = reorder(zero_family_d3_raw(), r_matrix_row_order());
    det1_exact = "(3 sqrt(3)/16)(3 + 5i/4)";
    det2_exact = "-27 sqrt(3)/8";
  } else if (a.family == "d3-rotated") {
    pairs = reorder(rotated_zero_family_d3(), r_matrix_row_order());
  } else {
    throw std::invalid_argument("unknown family '" + a.family + "' (expected d3-zero or d3-rotated)");
  }
  const SpanReport rep = span_report(w.op, pairs);
  if (a.json) {
    json j = io::span_report_to_json(rep);
    j["witness"] = w.name;
    j["family"] = a.family;
    if (!det1_exact.empty()) j["det_exact"] = {{"direct", det1_exact}, {"conjugate", det2_exact}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  double worst = 0.0;
  for (double z : rep.zero_values) worst = std::max(worst, z);
  std::cout << "witness: " << w.name << ", family: " << a.family << " (" << pairs.size() << " pairs)\n"
            << "max |<ab|W|ab>|: " << fmt(worst) << '\n'
            << "rank direct: " << rep.rank_direct << " / " << rep.full_dim << '\n'
            << "rank partially conjugated: " << rep.rank_conjugate << " / " << rep.full_dim << '\n';
  if (rep.square) {
    std::cout << "det direct: " << fmt(rep.det_direct);
    if (!det1_exact.empty()) std::cout << "  (exact " << det1_exact << ")";
    std::cout << "\ndet conjugate: " << fmt(rep.det_conjugate);
    if (!det2_exact.empty()) std::cout << "  (exact " << det2_exact << ")";
    std::cout << '\n';
  }
  std::cout << "bi-spanning: " << (rep.bi_spanning() ? "yes" : "no") << '\n';
  return 0;
}

struct SliceArgs {
  int d = 3;
  std::string rho_a, rho_b, out;
  std::vector<std::string> witnesses;
  int grid = 201;
};

int run_slice(SliceArgs a) {
  if (a.d == 3) {
    if (a.rho_a.empty()) a.rho_a = "rho_gamma";
    if (a.rho_b.empty()) a.rho_b = "rho_gamma_c";
    if (a.witnesses.empty()) a.witnesses = {"W_gamma_12", "W_gamma_34"};
  } else if (a.d == 5) {
    if (a.rho_a.empty()) a.rho_a = "rho1_d5";
    if (a.rho_b.empty()) a.rho_b = "rho2_d5";
    if (a.witnesses.empty()) a.witnesses = {"W1_d5", "W2_d5"};
  } else if (a.rho_a.empty() || a.rho_b.empty()) {
    throw std::invalid_argument("--rho-a and --rho-b are required for d = " + std::to_string(a.d));
  }
  const NamedOperator ra = load_operator(a.rho_a), rb = load_operator(a.rho_b);
  if (ra.op.dA() != a.d || ra.op.dB() != a.d) throw std::invalid_argument("--rho-a does not match --d");
  std::vector<NamedOperator> ws;
  for (const auto& w : a.witnesses) ws.push_back(load_operator(w));
  const SliceGrid grid = scan_slice(default_slice_spec(ra.op, rb.op, a.grid), ra.op, rb.op, ws);
  if (a.out.empty() || a.out == "-") {
    io::write_slice_csv(std::cout, grid);
  } else {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot open " + a.out + " for writing");
    io::write_slice_csv(f, grid);
  }
  const auto& s = grid.spec;
  std::cerr << "slice " << ra.name << " / " << rb.name << ": alpha, beta in [" << fmt(s.alpha_min) << ", "
            << fmt(s.alpha_max) << "], " << a.grid << " x " << a.grid << " nodes\n";
  return 0;
}

struct ReproduceArgs {
  std::string scope = "all";
  bool json = false;
  int restarts = 64;
  std::uint64_t seed = 0;
};

int run_reproduce_cmd(const ReproduceArgs& a) {
  const auto records = run_reproduce(parse_scope(a.scope), seesaw_config(a.restarts, a.seed));
  if (a.json)
    std::cout << records_to_json(records).dump(2) << '\n';
  else
    std::cout << records_to_tsv(records);
  int failed = 0, info = 0;
  for (const auto& r : records) {
    if (r.informational)
      ++info;
    else if (!r.pass) {
      ++failed;
      std::cerr << "FAIL " << r.claim_id << " (criterion " << r.criterion << "): error " << fmt(r.error) << '\n';
    }
  }
  std::cerr << records.size() << " claims, " << failed << " failed, " << info << " informational\n";
  return reproduce_exit_code(records);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement witness toolkit: catalog, certification, slices and reproduction checks"};
  app.require_subcommand(1);

  CatalogArgs cat;
  auto* c = app.add_subcommand("catalog", "List catalog operators or export one as JSON");
  c->add_flag("--list", cat.list, "Print all catalog names");
  c->add_option("--name", cat.name, "Catalog entry to export");
  c->add_option("--out", cat.out, "Output JSON path (default stdout)");

  MubArgs mub;
  auto* m = app.add_subcommand("mubs", "Construct and verify d+1 mutually unbiased bases");
  m->add_option("--d", mub.d, "Odd prime dimension")->check(CLI::PositiveNumber);
  m->add_flag("--displayed", mub.displayed, "Use the fixed qutrit bases B1..B4 instead");
  m->add_option("--out", mub.out, "Output JSON path (default stdout)");

  MirrorArgs mir;
  auto* mr = app.add_subcommand("mirror", "Estimate mu and write the mirrored partner mu 1 - W");
  mr->add_option("--in", mir.in, "Witness JSON file or catalog name")->required();
  mr->add_option("--out", mir.out, "Partner JSON path (default <name>_mirror.json)");
  mr->add_option("--restarts", mir.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  mr->add_option("--seed", mir.seed, "See-saw seed");

  CertifyArgs cer;
  auto* ce = app.add_subcommand("certify", "Spectrum, block-positivity evidence and detection values");
  ce->add_option("--witness", cer.witness, "Witness JSON file or catalog name")->required();
  ce->add_option("--state", cer.states, "State JSON file or catalog name (repeatable)");
  ce->add_flag("--json", cer.json, "Machine-readable output");
  ce->add_option("--restarts", cer.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  ce->add_option("--seed", cer.seed, "See-saw seed");

  SpanArgs sp;
  auto* s = app.add_subcommand("span", "Zero-set spanning certificate for a product family");
  s->add_option("--witness", sp.witness, "Witness JSON file or catalog name");
  s->add_option("--family", sp.family, "d3-zero or d3-rotated");
  s->add_flag("--json", sp.json, "Machine-readable output");

  SliceArgs sl;
  auto* si = app.add_subcommand("slice", "Scan an (alpha, beta) slice and write the slice CSV");
  si->add_option("--d", sl.d, "Local dimension (3 and 5 have default states and witnesses)");
  si->add_option("--rho-a", sl.rho_a, "First state");
  si->add_option("--rho-b", sl.rho_b, "Second state");
  si->add_option("--witness", sl.witnesses, "Witness column (repeatable)");
  si->add_option("--grid", sl.grid, "Nodes per axis")->check(CLI::Range(2, 2001));
  si->add_option("--out", sl.out, "Output CSV path (default stdout)");

  ReproduceArgs rp;
  auto* r = app.add_subcommand("reproduce", "Recompute every registered claim and report pass/fail");
  r->add_option("scope", rp.scope, "d3, d5 or all")->check(CLI::IsMember({"d3", "d5", "all"}));
  r->add_flag("--json", rp.json, "JSON records instead of TSV");
  r->add_option("--restarts", rp.restarts, "See-saw restarts")->check(CLI::PositiveNumber);
  r->add_option("--seed", rp.seed, "See-saw seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c) return run_catalog(cat);
    if (*m) return run_mubs(mub);
    if (*mr) return run_mirror(mir);
    if (*ce) return run_certify(cer);
    if (*s) return run_span(sp);
    if (*si) return run_slice(sl);
    if (*r) return run_reproduce_cmd(rp);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
