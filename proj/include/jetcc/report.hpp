#pragma once

#include <string>

#include "json.hpp"

#include "jetcc/cc.hpp"
#include "jetcc/formal.hpp"
#include "jetcc/parse.hpp"

namespace jetcc {

using Json = nlohmann::ordered_json;

struct ReportOptions {
  int max_order = 10;          // CC / syzygy / resolution scan cap
  int depth = 4;               // extra jet levels shown by `dims`
  unsigned long seed = 0;      // delta-regularization seed
  std::string format = "text"; // "text" or "structured"
};

struct Report {
  Json structured;   // schema jetcc-report-v1
  std::string text;  // human-readable rendering of the same data
  // 0 ok, 2 a scan cap was hit before the result was certified complete.
  int exit_code = 0;
};

// command is one of dims|tabular|cc|syzygies|resolution|full.
Report run_command(const SystemFile& file, const std::string& command,
                   const ReportOptions& opt);

}  // namespace jetcc
