#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "mergemix/econ_sim.hpp"
#include "mergemix/merge_avoidance.hpp"
#include "mergemix/mixing_scheme.hpp"

namespace mergemix::io {

using nlohmann::json;

// All parsers throw Error(ParseError) on malformed documents; semantic checks
// (balance, monotonicity, pmf) are left to the library types.

/// "p/q" or "p" strings; integral JSON numbers are accepted, floats are not.
Amount amount_from_json(const json& j);
json to_json(const Amount& a);

MAInstance ma_instance_from_json(const json& j);
SingleTargetInstance single_target_from_json(const json& j);
PartitionInstance partition_from_json(const json& j);
json to_json(const MAInstance& inst);

json to_json(const MASolution& sol, const MABounds& b);
MASolution ma_solution_from_json(const json& j);
json single_target_to_json(const IndexSet& k);

SequenceSpec sequence_from_json(const json& j);
json to_json(const SequenceSpec& spec);

/// T0 may be absent (defaults to 0) so partial schemes parse.
RewardScheme scheme_from_json(const json& j);
json to_json(const RewardScheme& scheme);
json tables_to_json(const TabulatedScheme& t);

LengthDistribution pmf_from_json(const json& j);
json to_json(const LengthDistribution& dist);

json to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

/// The "scheme" field holds either a scheme config or explicit tables
/// {"R": [...], "T": [...]} (T defaults to all zeros).
struct SimFile {
    RewardScheme scheme;
    bool neutral_t0 = false;  ///< scheme "T0": "neutral"
    std::optional<TabulatedScheme> tables;
    LengthDistribution lengths;
    std::int64_t messages;
    std::uint64_t seed;
    AttackPolicy attacks;
    std::uint64_t pool_size;
};
SimFile sim_from_json(const json& j);
/// Resolves a neutral T0 and materializes the table over [1, Lmax + Kmax],
/// unless explicit tables were given.
SimConfig to_sim_config(const SimFile& file);

json to_json(const SimReport& r);
SimReport sim_report_from_json(const json& j);
/// Header `message_index,total`, one row per trace sample.
std::string trace_csv(const SimReport& r);

json parse_document(const std::string& text);
json read_json_file(const std::string& path);
/// Writes `text` to path, or to `fallback` when path is empty or "-".
/// Throws Error(InvalidConfig) when the file cannot be opened.
void write_output(const std::string& path, const std::string& text, std::ostream& fallback);
/// Canonical rendering used for every emitted JSON document.
std::string dump(const json& j);

}  // namespace mergemix::io
