#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qrelay/channels.hpp"
#include "qrelay/fqsw.hpp"
#include "qrelay/linalg.hpp"
#include "qrelay/optimize.hpp"
#include "qrelay/rates.hpp"

// JSON converters shared by the CLI and tests. Complex numbers are [re, im]
// pairs; channels round-trip either as {"kind", "params"} or as explicit
// {"kraus", "input_dims", "output_dims"}. Parse errors surface as qrelay
// exceptions with the offending context in the message.

namespace qrelay {

using Json = nlohmann::json;

Json channel_to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const Json& j, const std::string& context);

// Accepts an orthogonal/interaction/direct relay spec, or a bare channel
// spec which is wrapped as a direct link.
RelayChannel relay_from_json(const Json& j);

// State on [A1, A, D] for rate evaluation: named family ("maxent_a1a",
// "product", "random") or explicit {"amps", "dims"}. a1_dim of 0 defaults
// to |A|*|D| for the families that need it.
PureState rates_state_from_json(const Json& j, const RelayChannel& relay,
                                Eigen::Index a1_dim, std::uint64_t seed);

// State on [A, B, C] for decoupling runs: {"name": "haar", "dims": [a, b, c]},
// {"name": "decoupled", "dims": [a, c]} or explicit {"amps", "dims"}.
PureState fqsw_state_from_json(const Json& j, std::uint64_t seed);

Json state_to_json(const PureState& psi);

Json report_to_json(const RateReport& report);
RateReport report_from_json(const Json& j);

RatePoint rate_point_from_json(const Json& j);
Json rate_point_to_json(const RatePoint& pt);

Json feasibility_to_json(const FeasibilityRecord& rec);
Json exponents_to_json(const DecouplingExponents& ex);

OptimizerConfig optimizer_config_from_json(const Json& j, std::uint64_t default_seed);
Objective objective_from_name(const std::string& name);

Json optimization_to_json(const OptimizationResult& result);
Json decoupling_to_json(const DecouplingResult& result);

}  // namespace qrelay
