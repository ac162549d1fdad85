#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qrelay/serialize.hpp"

namespace qrelay {

// One batch invocation, assembled from a JSON config file plus flag
// overrides. Subobjects keep their raw JSON form so validation can report
// every defect instead of dying on the first parse.
struct RunConfig {
  std::string command;
  Json channel;     // relay or bare channel spec
  Json state;       // input state spec
  Json rate_point;  // feasible
  Json optimizer;   // optimize; a1_dim also feeds the state families
  Json sweep;       // {"param", "start", "stop", "steps"}
  Json fqsw;        // {"a1_dim", "a2_dim", "trials"}
  Json report;      // optional precomputed report for feasible
  std::string objective = "df";
  std::string out_path;
  std::uint64_t seed = 0;
  double delta = 0.0;
  bool validate_only = false;
};

RunConfig config_from_json(const Json& doc);

// Overwrites every existing occurrence of `key` anywhere under `j`; returns
// how many spots were hit. Drives both sweep substitution and flag overrides.
long substitute(Json& j, const std::string& key, const Json& value);

// Structural checks only, nothing is executed. Empty result means runnable.
std::vector<std::string> validate(const RunConfig& cfg);

// Executes the command: primary document to stdout, files per --out.
// Exit codes: 0 success, 2 config error, 3 numeric error during computation.
int run(const RunConfig& cfg);

}  // namespace qrelay
