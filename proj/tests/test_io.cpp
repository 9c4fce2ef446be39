#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "ewit/io.hpp"
#include "ewit/witnesses.hpp"

using namespace ew;
using io::json;

TEST_CASE("operator JSON round trip is exact for the whole catalog") {
  for (const auto& name : catalog_names()) {
    const auto e = catalog(name);
    const json j = json::parse(io::operator_to_json(e.op).dump());
    const BipartiteOperator back = io::operator_from_json(j);
    INFO(name);
    CHECK(back.dA() == e.op.dA());
    CHECK(back.dB() == e.op.dB());
    CHECK(max_abs_diff(back, e.op) == 0.0);
    if (e.bell) {
      const BellCoefficients bc = io::bell_from_json(json::parse(io::bell_to_json(*e.bell).dump()));
      CHECK((bc.coeffs() - e.bell->coeffs()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("operator JSON layout") {
  const json j = io::operator_to_json(bell_projector(2, 1, 1));
  CHECK(j["dA"] == 2);
  CHECK(j["dB"] == 2);
  CHECK(j["re"].size() == 4);
  CHECK(j["im"][0].size() == 4);
}

TEST_CASE("malformed operator JSON is rejected") {
  json j = io::operator_to_json(BipartiteOperator::identity(2, 2));
  json wrong_dim = j;
  wrong_dim["dA"] = 3;
  CHECK_THROWS_AS(io::operator_from_json(wrong_dim), std::invalid_argument);
  json short_row = j;
  short_row["re"][1].erase(0);
  CHECK_THROWS_AS(io::operator_from_json(short_row), std::invalid_argument);
  json missing = j;
  missing.erase("im");
  CHECK_THROWS_AS(io::operator_from_json(missing), std::invalid_argument);
  json text = j;
  text["re"][0][0] = "one";
  CHECK_THROWS_AS(io::operator_from_json(text), std::invalid_argument);
  json neg = j;
  neg["dB"] = -2;
  CHECK_THROWS_AS(io::operator_from_json(neg), std::invalid_argument);
  CHECK_THROWS_AS(io::operator_from_json(json::array()), std::invalid_argument);
  CHECK_THROWS_AS(io::bell_from_json(json{{"d", 3}}), std::invalid_argument);
}

TEST_CASE("MUB JSON") {
  const json j = io::mubs_to_json(build_mubs(5));
  CHECK(j["d"] == 5);
  CHECK(j["bases"].size() == 6);
  CHECK(j["bases"][2].size() == 5);
  CHECK(j["bases"][2][3].size() == 5);
  CHECK(j["bases"][2][3][0].size() == 2);
}

TEST_CASE("slice CSV") {
  const auto r = catalog_operator("rho_gamma");
  SliceSpec spec{0.0, 1.0, 0.0, 1.0, 3, 3};
  const SliceGrid grid = scan_slice(spec, r, r, {{"W_gamma_12", catalog_operator("W_gamma_12")}});
  CHECK(io::slice_csv_header(grid) == "alpha,beta,is_state,min_eig,is_ppt,min_ppt_eig,in_enclosure,W_gamma_12");
  std::ostringstream out;
  io::write_slice_csv(out, grid);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == io::slice_csv_header(grid));
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    int commas = 0;
    for (char c : line) commas += c == ',';
    CHECK(commas == 7);
  }
  CHECK(rows == 9);
  // first data row: alpha = beta = 0, the maximally mixed state
  std::istringstream again(out.str());
  std::getline(again, line);
  std::getline(again, line);
  CHECK(line.rfind("0,0,1,", 0) == 0);
}

TEST_CASE("JSON files") {
  const auto path = (std::filesystem::temp_directory_path() / "ewit_io_test.json").string();
  io::write_json_file(path, io::operator_to_json(flip_operator(3)));
  CHECK(max_abs_diff(io::operator_from_json(io::read_json_file(path)), flip_operator(3)) == 0.0);
  std::remove(path.c_str());
  CHECK_THROWS(io::read_json_file(path));
}
