#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "ewit/certify.hpp"
#include "ewit/linops.hpp"
#include "ewit/mub.hpp"
#include "ewit/simplex.hpp"

namespace ew::io {

using json = nlohmann::json;

/// {"dA": int, "dB": int, "re": [[...]], "im": [[...]]}, row-major.
json operator_to_json(const BipartiteOperator& op);
/// Throws std::invalid_argument on missing fields or size mismatches.
BipartiteOperator operator_from_json(const json& j);

/// {"d": int, "coeffs": [[...]]}
json bell_to_json(const BellCoefficients& bc);
BellCoefficients bell_from_json(const json& j);

/// {"d": int, "bases": [[[re, im], ...] per vector] per basis}
json mubs_to_json(const MubSet& set);

json witness_report_to_json(const WitnessReport& rep);
json span_report_to_json(const SpanReport& rep);
json product_vector_to_json(const ProductVector& pv);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

/// Header alpha,beta,is_state,min_eig,is_ppt,min_ppt_eig,in_enclosure,<witnesses...>;
/// booleans as 0/1, reals with 12 significant digits.
void write_slice_csv(std::ostream& out, const SliceGrid& grid);
std::string slice_csv_header(const SliceGrid& grid);

}  // namespace ew::io
