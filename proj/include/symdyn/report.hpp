#pragma once

#include <string>

#include <json.hpp>

#include "symdyn/interval_maps.hpp"
#include "symdyn/nat_sets.hpp"
#include "symdyn/relations.hpp"
#include "symdyn/rotation.hpp"
#include "symdyn/streams.hpp"
#include "symdyn/subshifts.hpp"
#include "symdyn/substitutions.hpp"
#include "symdyn/witnesses.hpp"

namespace symdyn {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "symdyn-report/1";

// Replayable result envelope: rerunning the command with the recorded recipe
// reproduces the verdicts byte for byte (wall time aside).
struct Report {
    std::string command;
    Json recipe;
    Json verdicts;
    std::vector<std::string> csv;  // csv-series payload, when the command has one
    double wall_ms = 0;

    Json to_json(bool with_wall_time = true) const;
};

enum class RenderFormat { Json, Text, Csv };

RenderFormat parse_format(const std::string& name);
std::string render_report(const Report& report, RenderFormat format);

Json json_of(const Recipe& r);
Json json_of(const GapProfile& p);
Json json_of(const WindowSet& s);
Json json_of(const ClassifyVerdict& v);
Json json_of(const ThickSplit& s);
Json json_of(const PairLevel& l);
Json json_of(const PairVerdict& v);
Json json_of(const DensityProfile& p);
Json json_of(const SproxDensityCheck& c);
Json json_of(const CoincidenceCertificate& c);
Json json_of(const PairTable& t);
Json json_of(const ColumnNumberEstimate& e);
Json json_of(const VertexShift& g);
Json json_of(const CircularVerdict& v);
Json json_of(const SynchronizingVerdict& v);
Json json_of(const BlockPair& bp);
Json json_of(const RatInterval& i);
Json json_of(const Ladder& l);
Json json_of(const CodingSchedule& s);
Json json_of(const TraceReport& t);
Json json_of(const MilestoneCheck& m);
Json json_of(const DistanceProfile& p);

std::string render_text(const CoincidenceCertificate& c);

}  // namespace symdyn
