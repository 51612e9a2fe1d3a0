#pragma once

#include <string>

#include <json.hpp>

#include "bcbound/marton.hpp"
#include "bcbound/sampling.hpp"
#include "bcbound/stationarity.hpp"
#include "bcbound/theorem.hpp"

// Machine-readable reports and channel ingestion for the CLI. Reports are
// deterministic: identical (command, config, seed) produce identical bytes.

namespace bcbound {

inline constexpr const char* kToolName = "bcbound";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// FNV-1a over the canonical decimal rendering of the channel.
std::string channel_digest(const BroadcastChannel& bc);

// Parses either a named channel ("bssc", "bssc:<skew>", "blackwell") or a
// JSON file: {"input_size": n, "to_y": [[...],...], "to_z": [[...],...]}
// or {"named": "..."}. Throws std::invalid_argument with a diagnostic.
BroadcastChannel load_channel(const std::string& path_or_name);

Json channel_to_json(const BroadcastChannel& bc);
Json config_to_json(const OptimizerConfig& cfg);
Json gate_joint_to_json(const GateJoint& gj);
Json verification_report_to_json(const VerificationReport& report);
Json rtd_max_to_json(const RtdMax& r);
Json marton_max_to_json(const MartonMax& m);
Json outer_estimate_to_json(const OuterEstimate& o);
Json violation_witness_to_json(const ViolationWitness& w);

// Report envelope shared by all commands.
Json make_report(const std::string& command, const Json& args_echo,
                 const BroadcastChannel* bc, Json payload);

void write_report(const Json& report, const std::string& path);

// Per-point margin table for external plotting: one row per lattice point
// per canonical gate, at the given lattice denominator.
std::string margins_csv(const BroadcastChannel& bc, int denom);

}  // namespace bcbound
