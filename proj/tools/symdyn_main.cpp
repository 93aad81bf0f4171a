#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symdyn/report.hpp"

namespace symdyn {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::size_t> parse_levels(const std::string& csv) {
    std::vector<std::size_t> levels;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) levels.push_back(std::stoull(item));
    }
    return levels;
}

VertexShift parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open graph file '" + path + "'");
    }
    std::string vertices;
    std::vector<std::pair<char, char>> edges;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        if (colon == std::string::npos || colon == 0) {
            throw DomainError("bad adjacency line '" + line + "' (want \"v: wxy\")");
        }
        char v = line[0];
        if (vertices.find(v) == std::string::npos) vertices += v;
        for (std::size_t i = colon + 1; i < line.size(); ++i) {
            char c = line[i];
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            edges.emplace_back(v, c);
            if (vertices.find(c) == std::string::npos) vertices += c;
        }
    }
    return VertexShift::from_edges(Alphabet::make(vertices), edges);
}

// Distinct binary parameter streams from a seed; the first coordinates are
// forced to differ so downstream differences land at predictable positions.
std::pair<SymbolStream, SymbolStream> parameter_pair(std::uint64_t seed) {
    SymbolStream eta = SymbolStream::random(Alphabet::binary(), seed);
    SymbolStream eta2 = SymbolStream::random(Alphabet::binary(), seed + 1);
    if (eta.prefix(1).str() == eta2.prefix(1).str()) {
        eta2 = SymbolStream::with_flips(eta2, {0});
    }
    return {eta, eta2};
}

struct PairConstruction {
    SymbolStream x;
    SymbolStream y;
    std::size_t default_horizon;
};

PairConstruction build_pair(const std::string& name, std::uint64_t seed) {
    if (name == "fourletter-fixed-points") {
        auto tau = Substitution::example_four_letter();
        return {tau.fixed_point_stream('a'), tau.fixed_point_stream('b'), 19683};
    }
    if (name == "twoletter-fixed-points") {
        auto tau = Substitution::example_two_letter();
        return {tau.fixed_point_stream('0'), tau.fixed_point_stream('1'), 6561};
    }
    if (name == "base-pair") {
        auto [eta, eta2] = parameter_pair(seed);
        return {base_scrambled(eta), base_scrambled(eta2), 4096};
    }
    if (name == "spread-pair") {
        auto [eta, eta2] = parameter_pair(seed);
        return {spread_embed(base_scrambled(eta)), spread_embed(base_scrambled(eta2)), 65536};
    }
    if (name == "geometric-pair") {
        auto [eta, eta2] = parameter_pair(seed);
        return {geometric_blocks(base_scrambled(eta)), geometric_blocks(base_scrambled(eta2)),
                16384};
    }
    if (name == "quartic-pair") {
        auto [eta, eta2] = parameter_pair(seed);
        return {quartic_spread(base_scrambled(eta)), quartic_spread(base_scrambled(eta2)),
                65536};
    }
    if (name == "golden-blocks") {
        auto spec = parse_sft_spec("01", "11");
        auto pres = forbidden_to_vertex(spec);
        auto blocks = derive_sft_blocks(pres.graph, Word(pres.graph.vertices(), "0"));
        auto [eta, eta2] = parameter_pair(seed);
        return {block_concat(blocks.blocks, base_scrambled(eta)),
                block_concat(blocks.blocks, base_scrambled(eta2)), 4096};
    }
    throw DomainError("unknown pair construction '" + name + "'");
}

SymbolStream build_witness_stream(const std::string& name, std::uint64_t seed, const std::string& eta) {
    SymbolStream param = eta.empty()
                             ? SymbolStream::random(Alphabet::binary(), seed)
                             : SymbolStream::eventually_periodic(
                                   Word(Alphabet::binary(), eta), Word(Alphabet::binary(), "0"));
    if (name == "base-scrambled") return base_scrambled(param);
    if (name == "spread") return spread_embed(base_scrambled(param));
    if (name == "geometric") return geometric_blocks(param);
    if (name == "quartic") return quartic_spread(param);
    if (name == "fourletter-fixed-point-a") {
        return Substitution::example_four_letter().fixed_point_stream('a');
    }
    if (name == "fourletter-fixed-point-b") {
        return Substitution::example_four_letter().fixed_point_stream('b');
    }
    if (name == "twoletter-fixed-point-0") {
        return Substitution::example_two_letter().fixed_point_stream('0');
    }
    throw DomainError("unknown witness construction '" + name + "'");
}

WindowSet make_named_set(const std::string& name, std::size_t horizon) {
    if (name == "evens") {
        return WindowSet::from_predicate(horizon, [](std::size_t n) { return n % 2 == 0; });
    }
    if (name == "squares-blocks") {
        return WindowSet::from_predicate(horizon, [](std::size_t n) {
            std::size_t k = 0;
            while ((k + 1) * (k + 1) <= n) ++k;
            return n >= k * k && n <= k * k + k;
        });
    }
    if (name == "powers-of-two") {
        return WindowSet::from_predicate(horizon, [](std::size_t n) {
            return n >= 1 && (n & (n - 1)) == 0;
        });
    }
    if (name == "thirds-blocks") {
        // N intersected with the union of [2*3^k, 3^{k+1})
        return WindowSet::from_predicate(horizon, [](std::size_t n) {
            std::size_t p = 1;
            while (3 * p <= n) p *= 3;
            return n >= 2 * p && n < 3 * p;
        });
    }
    throw DomainError("unknown set family '" + name + "'");
}

int emit(const Report& report, const std::string& format, Clock::time_point start) {
    Report out = report;
    out.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    std::cout << render_report(out, parse_format(format));
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"symbolic-dynamics laboratory"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.fallthrough(true);

    std::string format = "json";
    app.add_option("--output", format, "output format: json|text|csv")->capture_default_str();

    auto start = Clock::now();

    // analyze-substitution
    auto* cmd_sub = app.add_subcommand("analyze-substitution",
                                       "primitivity, coincidence, column number, pair classes");
    std::string rules;
    unsigned depth = 5;
    cmd_sub->add_option("--rules", rules, "substitution rules, e.g. \"a->aab;b->bad\"")
        ->required();
    cmd_sub->add_option("--depth", depth, "search depth for all analyses")
        ->capture_default_str();

    // verify-pair
    auto* cmd_pair = app.add_subcommand("verify-pair", "finite-horizon pair classification");
    std::string construction;
    std::size_t horizon = 0;
    std::string eps_levels = "1,2,3,4,5,6,7,8";
    std::uint64_t seed = 1;
    double dc1_threshold = 0;
    cmd_pair->add_option("--construction", construction, "named pair construction")->required();
    cmd_pair->add_option("--horizon", horizon, "inspection horizon (0: construction default)");
    cmd_pair->add_option("--epsilon-levels", eps_levels,
                         "comma list of agreement levels m (thresholds 2^-m)")
        ->capture_default_str();
    cmd_pair->add_option("--seed", seed, "seed for randomized parameters")
        ->capture_default_str();
    cmd_pair->add_option("--dc1-threshold", dc1_threshold,
                         "also compute the density profile at this threshold");

    // construct-witness
    auto* cmd_wit = app.add_subcommand("construct-witness", "emit a witness stream prefix");
    std::string wit_name;
    std::size_t wit_length = 256;
    std::string wit_eta;
    cmd_wit->add_option("--construction", wit_name, "named stream construction")->required();
    cmd_wit->add_option("--length", wit_length, "prefix length")->capture_default_str();
    cmd_wit->add_option("--seed", seed, "seed for the binary parameter")->capture_default_str();
    cmd_wit->add_option("--eta", wit_eta, "explicit parameter bits (then constant 0)");

    // check-circular
    auto* cmd_circ = app.add_subcommand("check-circular", "circular-code verdict for a family");
    std::string family = "zero-tail";
    std::string words_csv;
    std::size_t family_n = 3;
    std::size_t test_length = 60;
    cmd_circ->add_option("--family", family, "named family (zero-tail)")->capture_default_str();
    cmd_circ->add_option("--words", words_csv, "explicit word list, comma separated");
    cmd_circ->add_option("--n", family_n, "family size")->capture_default_str();
    cmd_circ->add_option("--test-length", test_length, "concatenation length bound")
        ->capture_default_str();

    // classify-set
    auto* cmd_set = app.add_subcommand("classify-set", "gap statistics and N-set classes");
    std::string set_name;
    std::string set_rle;
    std::size_t set_horizon = 10000;
    std::size_t split_run = 0;
    cmd_set->add_option("--set", set_name,
                        "named family: evens|squares-blocks|powers-of-two|thirds-blocks");
    cmd_set->add_option("--rle", set_rle, "explicit members as intervals, e.g. 0-4,7,9-12");
    cmd_set->add_option("--horizon", set_horizon, "window horizon")->capture_default_str();
    cmd_set->add_option("--split-thick", split_run, "also split into two thick halves");

    // sft-info
    auto* cmd_sft = app.add_subcommand("sft-info", "vertex-shift presentation and structure");
    std::string alphabet = "01";
    std::string forbidden = "11";
    std::string graph_file;
    std::string derive_cycle;
    std::string sync_word;
    std::size_t sync_depth = 4;
    cmd_sft->add_option("--alphabet", alphabet, "SFT alphabet")->capture_default_str();
    cmd_sft->add_option("--forbidden", forbidden, "forbidden words, comma separated")
        ->capture_default_str();
    cmd_sft->add_option("--graph", graph_file, "adjacency list file (overrides --forbidden)");
    cmd_sft->add_option("--derive-blocks", derive_cycle, "derive a block pair from this cycle");
    cmd_sft->add_option("--synchronizing", sync_word, "verify this word synchronizing");
    cmd_sft->add_option("--depth", sync_depth, "extension depth for the synchronizing check")
        ->capture_default_str();

    // interval-trace
    auto* cmd_int = app.add_subcommand("interval-trace", "ladder, coding schedule, traced point");
    std::string map_name = "tent";
    std::string variant_name = "nested";
    std::size_t ladder_depth = 0;
    std::string alpha = "0101";
    cmd_int->add_option("--map", map_name, "tent | staircase | file path")
        ->capture_default_str();
    cmd_int->add_option("--variant", variant_name, "fixed-points | nested")->capture_default_str();
    cmd_int->add_option("--depth", ladder_depth, "ladder depth (0: |alpha|+1)");
    cmd_int->add_option("--alpha", alpha, "binary coding word (length <= 8)")
        ->capture_default_str();

    // rotation-example
    auto* cmd_rot = app.add_subcommand("rotation-example", "milestones and distance series");
    std::size_t n_max = 50;
    std::size_t rot_horizon = 820;
    std::size_t start_offset = 0;
    double epsilon = 0.2;
    cmd_rot->add_option("--n-max", n_max, "check milestones up to n")->capture_default_str();
    cmd_rot->add_option("--horizon", rot_horizon, "distance series length")
        ->capture_default_str();
    cmd_rot->add_option("--start", start_offset, "0: (1,0)-orbit, 1: F(1,0)-orbit")
        ->capture_default_str();
    cmd_rot->add_option("--epsilon", epsilon, "closeness threshold")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors, including unknown subcommands
    }

    if (cmd_sub->parsed()) {
        auto tau = Substitution::parse(rules);
        Report rep;
        rep.command = "analyze-substitution";
        rep.recipe = Json{{"rules", tau.rules_text()}, {"depth", depth}};
        auto cl = tau.constant_length();
        rep.verdicts["constant_length"] =
            Json{{"constant", cl.constant}, {"p", cl.length}};
        auto prim = tau.is_primitive(depth);
        rep.verdicts["primitive"] = Json{{"primitive", prim.primitive}, {"power", prim.power}};
        if (cl.constant) {
            auto cert = tau.coincidence_certificate(depth);
            rep.verdicts["coincidence"] = cert ? json_of(*cert) : Json(nullptr);
            if (cert) {
                rep.verdicts["coincidence_display"] = render_text(*cert);
            }
            rep.verdicts["column_number"] = json_of(tau.column_number_estimate(depth));
            rep.verdicts["pairs"] = json_of(tau.pair_reachability());
        }
        return emit(rep, format, start);
    }

    if (cmd_pair->parsed()) {
        auto pc = build_pair(construction, seed);
        std::size_t h = horizon ? horizon : pc.default_horizon;
        auto levels = parse_levels(eps_levels);
        auto verdict = pair_profile(pc.x, pc.y, h, levels);
        Report rep;
        rep.command = "verify-pair";
        rep.recipe = Json{{"construction", construction},
                          {"seed", seed},
                          {"horizon", h},
                          {"epsilon_levels", eps_levels},
                          {"x", json_of(pc.x.recipe())},
                          {"y", json_of(pc.y.recipe())}};
        rep.verdicts["pair"] = json_of(verdict);
        if (dc1_threshold > 0) {
            auto prof = dc1_profile(pc.x, pc.y, h, dc1_threshold);
            rep.verdicts["dc1"] = json_of(prof);
            rep.verdicts["sprox_density_bound"] =
                json_of(sprox_density_bound_check(verdict, prof));
        }
        return emit(rep, format, start);
    }

    if (cmd_wit->parsed()) {
        auto stream = build_witness_stream(wit_name, seed, wit_eta);
        Report rep;
        rep.command = "construct-witness";
        rep.recipe = Json{{"construction", wit_name},
                          {"seed", seed},
                          {"eta", wit_eta},
                          {"length", wit_length},
                          {"stream", json_of(stream.recipe())}};
        rep.verdicts["prefix"] = stream.prefix(wit_length).str();
        return emit(rep, format, start);
    }

    if (cmd_circ->parsed()) {
        std::vector<Word> words;
        if (!words_csv.empty()) {
            std::stringstream ss(words_csv);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) words.emplace_back(Alphabet::binary(), item);
            }
        } else if (family == "zero-tail") {
            words = coded_family(family_n).words;
        } else {
            throw DomainError("unknown family '" + family + "'");
        }
        CodedGenerator gen(words);
        Report rep;
        rep.command = "check-circular";
        Json jw = Json::array();
        for (const auto& w : gen.words) jw.push_back(w.str());
        rep.recipe = Json{{"family", words_csv.empty() ? family : "explicit"},
                          {"n", family_n},
                          {"test_length", test_length},
                          {"words", jw}};
        rep.verdicts["circular"] = json_of(circular_code_check(gen, test_length));
        auto flower = flower_graph(gen);
        auto period = graph_period(flower);
        rep.verdicts["flower_period"] =
            Json{{"period", period.period}, {"mixing", period.mixing}};
        return emit(rep, format, start);
    }

    if (cmd_set->parsed()) {
        WindowSet s = !set_rle.empty() ? WindowSet::from_rle(set_rle, set_horizon)
                                       : make_named_set(set_name, set_horizon);
        Report rep;
        rep.command = "classify-set";
        rep.recipe = Json{{"set", set_name}, {"rle", set_rle}, {"horizon", set_horizon}};
        rep.verdicts["window"] = json_of(s);
        rep.verdicts["classification"] = json_of(classify_window(s));
        if (split_run > 0) {
            rep.verdicts["split_thick"] = json_of(split_thick(s, split_run));
        }
        return emit(rep, format, start);
    }

    if (cmd_sft->parsed()) {
        Report rep;
        rep.command = "sft-info";
        VertexShift graph = [&] {
            if (!graph_file.empty()) {
                return parse_graph_file(graph_file);
            }
            auto spec = parse_sft_spec(alphabet, forbidden);
            auto pres = forbidden_to_vertex(spec);
            Json blocks = Json::array();
            for (const auto& b : pres.vertex_blocks) blocks.push_back(b);
            rep.verdicts["presentation"] =
                Json{{"block_length", pres.block_length}, {"vertex_blocks", blocks}};
            return pres.graph;
        }();
        rep.recipe = Json{{"alphabet", alphabet},
                          {"forbidden", forbidden},
                          {"graph_file", graph_file}};
        rep.verdicts["graph"] = json_of(graph);
        auto trans = is_transitive(graph);
        rep.verdicts["transitive"] = trans.transitive;
        if (trans.transitive) {
            auto period = graph_period(graph);
            rep.verdicts["period"] = period.period;
            rep.verdicts["mixing"] = period.mixing;
        }
        if (!derive_cycle.empty()) {
            auto blocks = derive_sft_blocks(graph, Word(graph.vertices(), derive_cycle));
            rep.verdicts["block_pair"] = json_of(blocks.blocks);
        }
        if (!sync_word.empty()) {
            rep.verdicts["synchronizing"] = json_of(
                verify_synchronizing(graph, Word(graph.vertices(), sync_word), sync_depth));
        }
        return emit(rep, format, start);
    }

    if (cmd_int->parsed()) {
        if (alpha.size() > 8) {
            throw PreconditionError("coding words longer than 8 are out of the desk-scale "
                                    "defaults; build the ladder through the library instead");
        }
        if (ladder_depth == 0) {
            ladder_depth = alpha.size() + 1;
        }
        PLMap f = map_name == "tent"        ? PLMap::tent()
                  : map_name == "staircase" ? PLMap::staircase(ladder_depth + 3)
                                            : [&] {
                                                  std::ifstream in(map_name);
                                                  std::stringstream buf;
                                                  buf << in.rdbuf();
                                                  return PLMap::parse(buf.str());
                                              }();
        LadderVariant variant = variant_name == "fixed-points" ? LadderVariant::FixedPointHung
                                                          : LadderVariant::NestedAtZero;
        std::vector<Rat> fps;
        if (variant == LadderVariant::FixedPointHung) {
            for (std::size_t n = 2; n <= ladder_depth + 3; ++n) {
                fps.push_back(Rat(BigInt(1), BigInt(1) << n));
            }
        }
        Ladder ladder = build_ladder(f, ladder_depth, variant, fps);
        Word alpha_word(Alphabet::binary(), alpha);
        auto sched = coding_schedule(f, ladder, alpha_word);
        auto k0 = trace_point(f, sched.intervals);
        Rat b = k0.midpoint();
        auto trace = verify_trace(f, b, sched.intervals, ladder.depth);
        Report rep;
        rep.command = "interval-trace";
        rep.recipe = Json{{"map", f.str()},
                          {"variant", variant_name},
                          {"depth", ladder_depth},
                          {"alpha", alpha}};
        rep.verdicts["ladder"] = json_of(ladder);
        rep.verdicts["schedule"] = json_of(sched);
        rep.verdicts["K0"] = json_of(k0);
        rep.verdicts["b"] = b.str();
        rep.verdicts["trace"] = json_of(trace);
        rep.csv.push_back("j,orbit_rational,orbit_decimal");
        for (std::size_t j = 0; j < trace.orbit.size(); ++j) {
            std::ostringstream line;
            line << j << "," << trace.orbit[j].str() << "," << trace.orbit[j].to_double();
            rep.csv.push_back(line.str());
        }
        return emit(rep, format, start);
    }

    if (cmd_rot->parsed()) {
        Report rep;
        rep.command = "rotation-example";
        rep.recipe = Json{{"n_max", n_max},
                          {"horizon", rot_horizon},
                          {"start", start_offset},
                          {"epsilon", epsilon}};
        auto checks = milestone_check(n_max);
        bool all = true;
        Json jm = Json::array();
        for (const auto& m : checks) {
            all = all && m.exact;
            jm.push_back(json_of(m));
        }
        rep.verdicts["milestones_all_exact"] = all;
        rep.verdicts["milestones"] = jm;
        auto prof = pair_distance_profile(rot_horizon, start_offset, {epsilon});
        rep.verdicts["distance"] = json_of(prof);
        rep.csv.push_back("n,distance,height,coeff");
        for (const auto& pt : prof.series) {
            std::ostringstream line;
            line << pt.n << "," << pt.distance << "," << pt.height.str() << ","
                 << pt.coeff.str();
            rep.csv.push_back(line.str());
        }
        return emit(rep, format, start);
    }

    return 2;
}

}  // namespace
}  // namespace symdyn

int main(int argc, char** argv) {
    try {
        return symdyn::run(argc, argv);
    } catch (const symdyn::Error& e) {
        symdyn::Json diag{{"error", "invariant-or-input"}, {"message", e.what()}};
        std::cerr << diag.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        symdyn::Json diag{{"error", "internal"}, {"message", e.what()}};
        std::cerr << diag.dump(2) << "\n";
        return 1;
    }
}
