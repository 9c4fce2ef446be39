#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ewit/certify.hpp"

namespace ew {

enum class ReproduceScope { D3, D5, All };

/// One reproduced number or property. Informational records document known
/// misprints and never count as failures.
struct ReproduceRecord {
  std::string claim_id;
  int criterion = 0;
  std::string scope;  // "d3" or "d5"
  std::string location;
  std::string expected;
  cplx computed{};
  double error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool informational = false;
};

ReproduceScope parse_scope(const std::string& s);

std::vector<ReproduceRecord> run_reproduce(ReproduceScope scope, const SeeSawConfig& cfg = {});

/// 0 when every non-informational record passes, 1 otherwise.
int reproduce_exit_code(const std::vector<ReproduceRecord>& records);

nlohmann::json records_to_json(const std::vector<ReproduceRecord>& records);
std::string records_to_tsv(const std::vector<ReproduceRecord>& records);

}  // namespace ew
