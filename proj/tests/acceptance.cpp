// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Every tolerance is pinned here; the only float comparison in the suite is
// the 1e-12 distance check of criterion 8.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "symdyn/interval_maps.hpp"
#include "symdyn/relations.hpp"
#include "symdyn/rotation.hpp"
#include "symdyn/subshifts.hpp"
#include "symdyn/substitutions.hpp"
#include "symdyn/witnesses.hpp"

using namespace symdyn;
using Clock = std::chrono::steady_clock;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
    if (!cond) {
        throw Failure(what);
    }
}

std::size_t pow_of(std::size_t base, unsigned k) {
    std::size_t r = 1;
    while (k--) r *= base;
    return r;
}

// ---- criterion 1: the four-letter substitution suite ----

void criterion_four_letter(std::ostringstream& note) {
    auto t0 = Clock::now();
    auto tau = Substitution::example_four_letter();

    auto prim = tau.is_primitive(4);
    require(prim.primitive && prim.power <= 4, "primitivity within depth 4");

    auto table = tau.pair_reachability();
    std::set<LetterPair> expected{LetterPair('a', 'c'), LetterPair('b', 'd')};
    for (auto [u, v] : {std::pair{'b', 'd'}, std::pair{'a', 'c'}}) {
        const auto& info = table.at(u, v);
        require(info.cls == PairClass::Exclusive,
                std::string{u, v} + " must be exclusive");
        std::set<LetterPair> reach(info.reachable.begin(), info.reachable.end());
        require(reach == expected, std::string{u, v} + " reachable set must be {ac, bd}");
    }
    require(table.at('a', 'b').cls == PairClass::Neither, "ab must be neither");

    auto est = tau.column_number_estimate(4);
    require(est.value == 2 && est.certified, "column number 2, certified");

    std::size_t horizon = pow_of(3, 9);
    auto xa = tau.fixed_point_stream('a');
    auto xb = tau.fixed_point_stream('b');
    const std::string sa = xa.prefix(horizon + 1).str();
    const std::string sb = xb.prefix(horizon + 1).str();
    for (unsigned k = 0; k <= 8; ++k) {
        std::size_t p = pow_of(3, k);
        for (std::size_t i = p; i < 2 * p; ++i) {
            require(sa[i] == sb[i], "agreement on [3^k, 2*3^k) at k=" + std::to_string(k));
        }
        for (std::size_t i = 2 * p; i < 3 * p && i <= horizon; ++i) {
            require(sa[i] != sb[i],
                    "disagreement on [2*3^k, 3^{k+1}) at k=" + std::to_string(k));
        }
    }
    auto verdict = pair_profile(xa, xb, horizon, {1, 2, 4});
    require(!verdict.sprox_evidence, "thick far set must defeat sprox evidence");

    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs < 10.0, "runtime must stay below 10 s");
    note << "primitive at n=" << prim.power << ", column number 2 certified, blocks exact, "
         << secs << " s";
}

// ---- criterion 2: the two-letter substitution ----

void criterion_two_letter(std::ostringstream& note) {
    auto tau = Substitution::example_two_letter();
    auto cert = tau.coincidence_certificate(4);
    require(cert.has_value(), "coincidence certificate must exist");
    require(cert->t == 1 && cert->column == 1 && cert->letter == '0',
            "certificate must be (t=1, i=1, e='0')");
    auto est = tau.column_number_estimate(4);
    require(est.value == 1 && est.certified, "column number must be exactly 1");
    note << "certificate (t=1, i=1, e='0'), column number 1";
}

// ---- criterion 3: spread-embedded pairs ----

void criterion_spread(std::ostringstream& note) {
    std::size_t horizon = 1 << 16;
    std::size_t worst_gap = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        // parameters differ at index 0, so the c-streams differ at position 13
        // and the embedded pair differs at 2^13, past 2^12
        auto eta = SymbolStream::random(Alphabet::binary(), seed);
        auto eta2 = SymbolStream::with_flips(eta, {0});
        auto x = spread_embed(base_scrambled(eta));
        auto y = spread_embed(base_scrambled(eta2));
        auto v = pair_profile(x, y, horizon, {1, 2, 3, 4, 5, 6, 7, 8});
        for (const auto& level : v.levels) {
            std::size_t m = level.level;
            std::size_t cut = std::size_t{1} << (m + 1);
            const auto& ms = level.close.members();
            for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
                if (ms[i] > cut) {
                    require(ms[i + 1] - ms[i] <= m + 2,
                            "close-set gap exceeds m+2 at level " + std::to_string(m));
                    worst_gap = std::max(worst_gap, ms[i + 1] - ms[i]);
                }
            }
            require(!ms.empty() && horizon - ms.back() <= m + 1,
                    "close set must reach the horizon");
        }
        auto far = v.levels.front().close.complement();
        bool far_late = false;
        for (std::size_t nmem : far.members()) {
            far_late = far_late || nmem > (1 << 12);
        }
        require(far_late, "far set must have a member beyond 2^12");
    }
    note << "20 pairs, 8 levels, worst observed gap " << worst_gap;
}

// ---- criterion 4: quartic-spread pairs ----

void criterion_quartic(std::ostringstream& note) {
    std::size_t horizon = pow_of(4, 8);
    std::size_t need = 3 * pow_of(4, 7);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto x = SymbolStream::random(Alphabet::binary(), seed);
        auto y = SymbolStream::with_flips(x, {7});  // differ at parameter 7
        auto v = pair_profile(quartic_spread(x), quartic_spread(y), horizon, {1});
        require(v.levels.front().far_profile.longest_run >= need,
                "far run must reach 3*4^7");
    }
    note << "far runs of length >= " << need << " within 4^8";
}

// ---- criterion 5: the circular-code family ----

void criterion_circular(std::ostringstream& note) {
    auto fam = coded_family(4);
    auto verdict = circular_code_check(fam, 60);
    require(verdict.circular, "family {w(1)..w(4)} must be circular up to 60");
    require(!verdict.counterexample.has_value(), "no counterexample expected");
    for (std::size_t n = 1; n <= 4; ++n) {
        auto period = graph_period(flower_graph(coded_family(n)));
        require(period.period % 2 == 0,
                "flower period must be even at n=" + std::to_string(n));
    }
    note << "circular at length 60, flower periods even for n <= 4";
}

// ---- criterion 6: golden-mean pipeline ----

void criterion_golden(std::ostringstream& note) {
    auto pres = forbidden_to_vertex(parse_sft_spec("01", "11"));
    require(is_transitive(pres.graph).transitive, "golden mean must be transitive");
    auto period = graph_period(pres.graph);
    require(period.period == 1 && period.mixing, "golden mean must be mixing");

    auto blocks = derive_sft_blocks(pres.graph, Word(pres.graph.vertices(), "0"));
    require(blocks.blocks.b.length() == blocks.blocks.c.length(), "|B| = |C|");
    require(blocks.blocks.b.str() != blocks.blocks.c.str(), "B != C");

    std::size_t length = 1 << 12;
    Word witness = block_concat_witness(blocks.blocks,
                                        SymbolStream::random(Alphabet::binary(), 6), length);
    require(witness.length() == length, "witness length");
    // full admissibility: every adjacent pair is an edge, which for a vertex
    // shift makes every factor of every length admissible
    for (std::size_t i = 0; i + 1 < witness.length(); ++i) {
        require(pres.graph.has_edge(witness.at(i), witness.at(i + 1)),
                "factor scan at position " + std::to_string(i));
    }
    note << "B=" << blocks.blocks.b.str() << " C=" << blocks.blocks.c.str()
         << ", witness of 2^12 fully admissible";
}

// ---- criterion 7: tent-map interval suite ----

void criterion_interval(std::ostringstream& note) {
    auto t0 = Clock::now();
    auto tent = PLMap::tent();

    auto fps = tent.fixed_points();
    require(fps.size() == 2, "tent has two fixed points");
    require(fps[0] == RatInterval(Rat(0), Rat(0)) &&
                fps[1] == RatInterval(Rat(2, 3), Rat(2, 3)),
            "fixed points {0, 2/3}");

    auto ladder = build_ladder(tent, 5, LadderVariant::NestedAtZero);
    for (const auto& chain : ladder.chains) {
        for (std::size_t i = 0; i + 1 < chain.up.size(); ++i) {
            require(tent.covers(chain.up[i], chain.up[i + 1]), "chain up covering");
        }
        for (std::size_t i = 0; i + 1 < chain.down.size(); ++i) {
            require(tent.covers(chain.down[i], chain.down[i + 1]), "chain down covering");
        }
    }

    Rat separation = dist(ladder.h0, ladder.h1);
    require(separation > Rat(0), "H0, H1 disjoint");

    std::vector<std::pair<Word, Rat>> traced;
    for (int bits = 0; bits < 16; ++bits) {
        std::string a;
        for (int i = 3; i >= 0; --i) {
            a += (bits >> i) & 1 ? '1' : '0';
        }
        Word alpha(Alphabet::binary(), a);
        auto sched = coding_schedule(tent, ladder, alpha);
        for (std::size_t i = 0; i + 1 < sched.intervals.size(); ++i) {
            require(tent.covers(sched.intervals[i], sched.intervals[i + 1]),
                    "schedule covering for alpha=" + a);
        }
        auto k0 = trace_point(tent, sched.intervals);
        require(k0.a <= k0.b, "nonempty K0 for alpha=" + a);
        Rat b = k0.midpoint();
        auto rep = verify_trace(tent, b, sched.intervals, ladder.depth);
        require(rep.itinerary_ok, "itinerary verified for alpha=" + a);
        for (const auto& tg : rep.thresholds) {
            if (tg.n == 3) {
                require(tg.profile.max_gap <= tg.schedule_excursion + 1,
                        "1/3-visit gap bounded by the schedule excursion");
            }
        }
        traced.emplace_back(alpha, b);
    }
    for (const auto& [a0, b0] : traced) {
        for (const auto& [a1, b1] : traced) {
            if (a0.at(0) != a1.at(0)) {
                require(abs(b0 - b1) >= separation,
                        "first-symbol separation by dist(H0, H1)");
            }
        }
    }

    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    require(secs < 30.0, "runtime must stay below 30 s");
    note << "16 coded traces, separation >= " << separation.str() << ", " << secs << " s";
}

// ---- criterion 8: the rotation example ----

void criterion_rotation(std::ostringstream& note) {
    for (const auto& check : milestone_check(50)) {
        require(check.exact, "milestone identity at n=" + std::to_string(check.n));
    }
    auto prof = pair_distance_profile(rotation_milestone(40), 0, {0.2});
    for (std::size_t n = 2; n <= 40; n += 2) {
        const auto& pt = prof.series[rotation_milestone(n)];
        require(pt.coeff == Rat(static_cast<long long>(rotation_milestone(n))),
                "even-milestone angle equality at n=" + std::to_string(n));
        double expected = 1.0 / static_cast<double>(n);
        require(std::fabs(pt.distance - expected) < 1e-12,
                "even-milestone distance 1/n at n=" + std::to_string(n));
    }
    const auto& gaps = prof.closeness.front().quarter_max_gaps;
    require(gaps.size() == 4 && gaps[0] < gaps[1] && gaps[1] < gaps[2] && gaps[2] < gaps[3],
            "closeness gaps must grow across quarters");
    note << "milestones exact to n=50, quarter gaps " << gaps[0] << "/" << gaps[1] << "/"
         << gaps[2] << "/" << gaps[3];
}

// ---- criterion 9: cross-module oracles ----

Substitution random_substitution(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> alpha_size(2, 4);
    std::uniform_int_distribution<int> plen(2, 3);
    int n = alpha_size(rng);
    int p = plen(rng);
    std::string letters = std::string("abcd").substr(0, n);
    std::string rules;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (char a : letters) {
        if (!rules.empty()) rules += "; ";
        rules += a;
        rules += "->";
        for (int i = 0; i < p; ++i) {
            rules += letters[pick(rng)];
        }
    }
    return Substitution::parse(rules);
}

bool solvable_in(const PLMap& f, const RatInterval& k, const Rat& y) {
    const auto& ts = f.breakpoints();
    const auto& vs = f.values();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        Rat lo = max(ts[i], k.a);
        Rat hi = min(ts[i + 1], k.b);
        if (hi < lo) continue;
        Rat flo = vs[i] + (lo - ts[i]) * (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
        Rat fhi = vs[i] + (hi - ts[i]) * (vs[i + 1] - vs[i]) / (ts[i + 1] - ts[i]);
        if (min(flo, fhi) <= y && y <= max(flo, fhi)) return true;
    }
    return false;
}

void criterion_oracles(std::ostringstream& note) {
    // pair reachability vs direct image scanning, depth <= 4
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto tau = random_substitution(seed);
        const std::string& letters = tau.alphabet()->symbols();
        for (std::size_t i = 0; i < letters.size(); ++i) {
            for (std::size_t j = i + 1; j < letters.size(); ++j) {
                std::set<LetterPair> frontier{LetterPair(letters[i], letters[j])};
                for (unsigned k = 1; k <= 4; ++k) {
                    std::set<LetterPair> next;
                    for (const auto& q : frontier) {
                        const Word& wu = tau.image(q.a);
                        const Word& wv = tau.image(q.b);
                        for (std::size_t col = 0; col < wu.length(); ++col) {
                            next.emplace(wu.at(col), wv.at(col));
                        }
                    }
                    frontier = std::move(next);
                    Word wu = tau.apply_power(
                        Word(tau.alphabet(), std::string(1, letters[i])), k);
                    Word wv = tau.apply_power(
                        Word(tau.alphabet(), std::string(1, letters[j])), k);
                    std::set<LetterPair> scan;
                    for (std::size_t col = 0; col < wu.length(); ++col) {
                        scan.emplace(wu.at(col), wv.at(col));
                    }
                    require(frontier == scan, "pair-graph frontier must equal image scan");
                }
            }
        }
    }

    // covers vs exact per-sample solving
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<long long> coord(0, 48);
    for (int trial = 0; trial < 100; ++trial) {
        std::set<long long> cuts;
        std::uniform_int_distribution<int> pieces(1, 5);
        int r = pieces(rng);
        while (static_cast<int>(cuts.size()) < r - 1) {
            long long c = coord(rng);
            if (c > 0 && c < 48) cuts.insert(c);
        }
        std::vector<Rat> ts{Rat(0)};
        for (long long c : cuts) ts.push_back(Rat(c, 48));
        ts.push_back(Rat(1));
        std::vector<Rat> vs;
        for (std::size_t i = 0; i < ts.size(); ++i) vs.push_back(Rat(coord(rng), 48));
        PLMap f(std::move(ts), std::move(vs));

        long long a = coord(rng) % 49;
        long long b = coord(rng) % 49;
        if (b < a) std::swap(a, b);
        long long c = coord(rng) % 49;
        long long d = coord(rng) % 49;
        if (d < c) std::swap(c, d);
        RatInterval k(Rat(a, 48), Rat(b, 48));
        RatInterval l(Rat(c, 48), Rat(d, 48));
        bool by_image = f.covers(k, l);
        bool by_solving = true;
        for (int t = 0; t <= 1000 && by_solving; ++t) {
            by_solving = solvable_in(f, k, l.a + (l.b - l.a) * Rat(t, 1000));
        }
        require(by_image == by_solving, "covers must agree with dense exact sampling");
    }

    // translate_mod preserves first differences
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto a = SymbolStream::random(Alphabet::digits(3), seed * 3 + 1);
        auto b = SymbolStream::random(Alphabet::digits(3), seed * 3 + 2);
        auto z = SymbolStream::random(Alphabet::digits(3), seed * 3 + 3);
        auto before = stream_distance(a, b, 96);
        auto after = stream_distance(translate_mod(a, z), translate_mod(b, z), 96);
        require(before.resolved == after.resolved && before.exponent == after.exponent,
                "translation must preserve the first difference index");
    }
    note << "50 substitutions, 100 maps, 100 triples: full agreement";
}

// ---- criterion 10: CLI determinism ----

std::string run_cli(const std::string& cli, const std::string& args, int& exit_code) {
    std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    require(pipe != nullptr, "popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), got);
    }
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion_determinism(std::ostringstream& note) {
    const char* cli = std::getenv("SYMDYN_CLI");
    require(cli != nullptr, "SYMDYN_CLI must point at the built binary");
    std::vector<std::string> commands{
        "analyze-substitution --rules \"a->aab;b->bad;c->ccd;d->dcb\" --depth 5",
        "verify-pair --construction fourletter-fixed-points --horizon 19683",
        "verify-pair --construction spread-pair --seed 2",
        "construct-witness --construction quartic --length 512 --seed 4",
        "check-circular --family zero-tail --n 3 --test-length 60",
        "classify-set --set squares-blocks --horizon 10000 --split-thick 16",
        "sft-info --alphabet 01 --forbidden 11 --derive-blocks 0 --synchronizing 1",
        "interval-trace --map tent --depth 5 --alpha 0101",
        "interval-trace --map staircase --variant fixed-points --depth 4 --alpha 010",
        "rotation-example --n-max 50 --horizon 820",
    };
    for (const auto& args : commands) {
        int c1 = 0;
        int c2 = 0;
        std::string o1 = run_cli(cli, args, c1);
        std::string o2 = run_cli(cli, args, c2);
        require(c1 == 0 && c2 == 0, "command failed: " + args);
        nlohmann::ordered_json j1 = nlohmann::ordered_json::parse(o1);
        nlohmann::ordered_json j2 = nlohmann::ordered_json::parse(o2);
        j1.erase("wall_time_ms");
        j2.erase("wall_time_ms");
        require(j1.dump() == j2.dump(), "replay differs for: " + args);
    }
    note << commands.size() << " commands replayed byte-identically (wall time excluded)";
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "four-letter substitution suite", criterion_four_letter},
        {2, "two-letter coincidence and column number", criterion_two_letter},
        {3, "spread-embedded pairs: syndetic closeness", criterion_spread},
        {4, "quartic-spread pairs: thick far runs", criterion_quartic},
        {5, "circular-code family and flower parity", criterion_circular},
        {6, "golden-mean pipeline", criterion_golden},
        {7, "tent-map ladder, coding and traces", criterion_interval},
        {8, "rotation example milestones and gaps", criterion_rotation},
        {9, "cross-module oracles", criterion_oracles},
        {10, "CLI determinism", criterion_determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        std::ostringstream note;
        try {
            c.body(note);
            std::cout << "[PASS] criterion " << c.id << ": " << c.name;
            if (!note.str().empty()) {
                std::cout << " (" << note.str() << ")";
            }
            std::cout << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "[FAIL] criterion " << c.id << ": " << c.name << " -- " << e.what()
                      << "\n";
        }
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
