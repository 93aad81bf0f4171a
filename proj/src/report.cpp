#include "symdyn/report.hpp"

#include <sstream>

namespace symdyn {

Json Report::to_json(bool with_wall_time) const {
    Json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["recipe"] = recipe;
    j["verdicts"] = verdicts;
    j["tool_version"] = kToolVersion;
    if (with_wall_time) {
        j["wall_time_ms"] = wall_ms;
    }
    return j;
}

RenderFormat parse_format(const std::string& name) {
    if (name == "json") return RenderFormat::Json;
    if (name == "text") return RenderFormat::Text;
    if (name == "csv") return RenderFormat::Csv;
    throw DomainError("unknown output format '" + name + "'");
}

namespace {

void render_text_node(std::ostream& os, const Json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            render_text_node(os, v, prefix.empty() ? k : prefix + "." + k);
        }
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& v : j) {
            render_text_node(os, v, prefix + "[" + std::to_string(i++) + "]");
        }
    } else {
        os << prefix << ": " << j.dump() << "\n";
    }
}

}  // namespace

std::string render_report(const Report& report, RenderFormat format) {
    switch (format) {
        case RenderFormat::Json:
            return report.to_json().dump(2) + "\n";
        case RenderFormat::Text: {
            std::ostringstream os;
            render_text_node(os, report.to_json(), "");
            return os.str();
        }
        case RenderFormat::Csv: {
            std::string out;
            for (const auto& line : report.csv) {
                out += line;
                out += "\n";
            }
            return out;
        }
    }
    throw DomainError("unknown render format");
}

Json json_of(const Recipe& r) {
    Json j;
    j["rule"] = r.name;
    for (const auto& [k, v] : r.params) {
        j[k] = v;
    }
    if (!r.children.empty()) {
        Json kids = Json::array();
        for (const auto& c : r.children) {
            kids.push_back(json_of(c));
        }
        j["inputs"] = kids;
    }
    return j;
}

Json json_of(const GapProfile& p) {
    return Json{{"max_gap", p.max_gap},
                {"longest_run", p.longest_run},
                {"longest_hole", p.longest_hole}};
}

Json json_of(const WindowSet& s) {
    return Json{{"horizon", s.horizon()},
                {"count", s.members().size()},
                {"intervals", s.to_rle()}};
}

Json json_of(const ClassifyVerdict& v) {
    Json j;
    j["profile"] = json_of(v.profile);
    j["syndetic"] = Json{{"evidence", v.syndetic_evidence},
                         {"gap", v.syndetic_gap},
                         {"first_half_max_gap", v.first_half_max_gap},
                         {"tail_max_gap", v.tail_max_gap},
                         {"largest_tail_hole_start", v.largest_tail_hole_start},
                         {"largest_tail_hole_len", v.largest_tail_hole_len}};
    j["thick"] = Json{{"run", v.thick_run}};
    j["cofinite"] = Json{{"evidence", v.cofinite_tail}, {"tail_start", v.cofinite_tail_start}};
    j["thickly_syndetic"] = Json{{"depth", v.thickly_syndetic_depth}};
    j["piecewise_syndetic"] = Json{{"gap_bound", v.pw_gap_bound},
                                   {"window_start", v.pw_window_start},
                                   {"window_len", v.pw_window_len}};
    return j;
}

Json json_of(const ThickSplit& s) {
    return Json{{"q", json_of(s.q)},
                {"q_profile", json_of(s.q_profile)},
                {"complement_profile", json_of(s.complement_profile)}};
}

Json json_of(const PairLevel& l) {
    Json j;
    j["level"] = l.level;
    j["threshold"] = "2^-" + std::to_string(l.level);
    j["close_count"] = l.close.members().size();
    j["close_profile"] = json_of(l.close_profile);
    j["far_profile"] = json_of(l.far_profile);
    j["close_syndetic_evidence"] = l.close_syndetic_evidence;
    j["close_tail_gap"] = l.close_tail_gap;
    return j;
}

Json json_of(const PairVerdict& v) {
    Json j;
    j["horizon"] = v.horizon;
    j["lookahead"] = v.lookahead;
    Json levels = Json::array();
    for (const auto& l : v.levels) {
        levels.push_back(json_of(l));
    }
    j["levels"] = levels;
    if (v.last_difference_index) {
        j["last_difference_index"] = *v.last_difference_index;
    } else {
        j["last_difference_index"] = nullptr;
    }
    j["liminf"] = Json{{"exponent", v.liminf_exponent},
                       {"hit_cap", v.liminf_hit_cap},
                       {"value", v.liminf_estimate()}};
    j["limsup"] = Json{{"exponent", v.limsup_exponent},
                       {"hit_cap", v.limsup_hit_cap},
                       {"value", v.limsup_estimate()}};
    j["sprox_evidence"] = v.sprox_evidence;
    return j;
}

Json json_of(const DensityProfile& p) {
    return Json{{"threshold", p.threshold},
                {"exponent", p.exponent},
                {"horizon", p.horizon},
                {"tail_begin", p.tail_begin},
                {"phi_est", p.phi_est},
                {"phi_star_est", p.phi_star_est},
                {"close_count", p.close_count}};
}

Json json_of(const SproxDensityCheck& c) {
    const char* verdict = c.verdict == BoundCheck::Holds   ? "holds"
                          : c.verdict == BoundCheck::Fails ? "fails"
                                                           : "skipped";
    return Json{{"verdict", verdict}, {"gap", c.gap}, {"bound", c.bound},
                {"phi_est", c.phi_est}};
}

Json json_of(const CoincidenceCertificate& c) {
    return Json{{"t", c.t}, {"column", c.column}, {"letter", std::string(1, c.letter)}};
}

std::string render_text(const CoincidenceCertificate& c) {
    return "(t=" + std::to_string(c.t) + ", i=" + std::to_string(c.column) + ", e='" +
           std::string(1, c.letter) + "')";
}

Json json_of(const PairTable& t) {
    Json arr = Json::array();
    for (const auto& info : t.pairs) {
        Json j;
        j["pair"] = info.pair.str();
        j["class"] = info.cls == PairClass::Exclusive    ? "exclusive"
                     : info.cls == PairClass::Attractive ? "attractive"
                                                         : "neither";
        Json reach = Json::array();
        for (const auto& r : info.reachable) {
            reach.push_back(r.str());
        }
        j["reachable"] = reach;
        arr.push_back(j);
    }
    return arr;
}

Json json_of(const ColumnNumberEstimate& e) {
    Json j{{"value", e.value}, {"depth", e.depth}, {"certified", e.certified}};
    j["exclusive_clique"] = std::string(e.exclusive_clique.begin(), e.exclusive_clique.end());
    return j;
}

Json json_of(const VertexShift& g) {
    Json j;
    j["vertices"] = g.vertices()->symbols();
    Json edges = Json::array();
    for (auto [a, b] : g.edges()) {
        edges.push_back(std::string{a, '-', '>', b});
    }
    j["edges"] = edges;
    return j;
}

Json json_of(const CircularVerdict& v) {
    Json j{{"circular", v.circular}, {"bound", v.bound}};
    if (v.counterexample) {
        Json ce;
        ce["p"] = v.counterexample->p.str();
        ce["s"] = v.counterexample->s.str();
        Json xs = Json::array();
        for (const auto& w : v.counterexample->xs) xs.push_back(w.str());
        Json ys = Json::array();
        for (const auto& w : v.counterexample->ys) ys.push_back(w.str());
        ce["xs"] = xs;
        ce["ys"] = ys;
        j["counterexample"] = ce;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

Json json_of(const SynchronizingVerdict& v) {
    Json j{{"synchronizing", v.synchronizing}, {"depth", v.depth}};
    if (v.failure) {
        j["failure"] = Json{{"u", v.failure->first.str()}, {"v", v.failure->second.str()}};
    }
    return j;
}

Json json_of(const BlockPair& bp) {
    return Json{{"B", bp.b.str()}, {"C", bp.c.str()}, {"length", bp.b.length()}};
}

Json json_of(const RatInterval& i) {
    return Json{{"a", i.a.str()}, {"b", i.b.str()}};
}

Json json_of(const Ladder& l) {
    Json j;
    j["variant"] = l.variant == LadderVariant::FixedPointHung ? "fixed-points" : "nested";
    j["depth"] = l.depth;
    Json levels = Json::array();
    for (std::size_t n = 2; n <= l.depth + 1; ++n) {
        levels.push_back(Json{{"n", n}, {"interval", json_of(l.level(n))}});
    }
    j["levels"] = levels;
    Json chains = Json::array();
    for (const auto& c : l.chains) {
        chains.push_back(Json{{"n", c.n}, {"k", c.k}});
    }
    j["chains"] = chains;
    j["H0"] = json_of(l.h0);
    j["H1"] = json_of(l.h1);
    j["k1"] = l.k1;
    return j;
}

Json json_of(const CodingSchedule& s) {
    Json j;
    j["alpha"] = s.alpha.str();
    j["steps"] = s.steps();
    j["h_positions"] = s.h_positions;
    return j;
}

Json json_of(const TraceReport& t) {
    Json j;
    j["itinerary_ok"] = t.itinerary_ok;
    j["checked_steps"] = t.checked_steps;
    Json thr = Json::array();
    for (const auto& tg : t.thresholds) {
        thr.push_back(Json{{"n", tg.n},
                           {"visit_count", tg.visits.members().size()},
                           {"profile", json_of(tg.profile)},
                           {"schedule_excursion", tg.schedule_excursion}});
    }
    j["thresholds"] = thr;
    return j;
}

Json json_of(const MilestoneCheck& m) {
    return Json{{"n", m.n}, {"m", m.m}, {"coeff", m.coeff.str()}, {"exact", m.exact}};
}

Json json_of(const DistanceProfile& p) {
    Json j;
    j["alpha"] = p.alpha;
    j["start_offset"] = p.start_offset;
    j["points"] = p.series.size();
    Json cl = Json::array();
    for (const auto& c : p.closeness) {
        cl.push_back(Json{{"epsilon", c.epsilon},
                          {"close_count", c.close.members().size()},
                          {"quarter_max_gaps", c.quarter_max_gaps}});
    }
    j["closeness"] = cl;
    return j;
}

}  // namespace symdyn
