#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdyn/nat_sets.hpp"
#include "symdyn/rat.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

struct RatInterval {
    Rat a;
    Rat b;

    RatInterval() = default;
    RatInterval(Rat lo, Rat hi);

    bool contains(const Rat& x) const { return a <= x && x <= b; }
    bool contains(const RatInterval& o) const { return a <= o.a && o.b <= b; }
    Rat length() const { return b - a; }
    Rat midpoint() const { return (a + b) / Rat(2); }
    bool degenerate() const { return a == b; }
    std::string str() const { return "[" + a.str() + ", " + b.str() + "]"; }

    friend bool operator==(const RatInterval&, const RatInterval&) = default;
};

Rat dist(const RatInterval& x, const RatInterval& y);

// Continuous piecewise-linear self-map of [0,1] with exact rational
// breakpoints. All covering questions reduce to exact subset tests.
class PLMap {
  public:
    PLMap(std::vector<Rat> breakpoints, std::vector<Rat> values);

    // "0 0; 1/2 1; 1 0" -- breakpoint/value pairs
    static PLMap parse(const std::string& text);
    std::string str() const;

    static PLMap tent();
    // Mixing fixture with fixed points at 2^{-k} for k = 1..levels and
    // f^{-1}(0) = {0}; one bump per dyadic level plus a sweep on [1/2, 1]
    // dropping to 2^{-levels-2}.
    static PLMap staircase(std::size_t levels);

    std::size_t piece_count() const { return breakpoints_.size() - 1; }
    const std::vector<Rat>& breakpoints() const { return breakpoints_; }
    const std::vector<Rat>& values() const { return values_; }

    Rat eval(const Rat& x) const;
    RatInterval image(const RatInterval& k) const;
    bool covers(const RatInterval& k, const RatInterval& l) const;  // L subset f(K)
    std::vector<RatInterval> preimage(const RatInterval& l) const;  // maximal components

    // All solutions of f(x) = x; pieces lying on the diagonal come out as
    // nondegenerate intervals.
    std::vector<RatInterval> fixed_points() const;

  private:
    std::vector<Rat> breakpoints_;
    std::vector<Rat> values_;
};

enum class LadderVariant { FixedPointHung, NestedAtZero };

// Interval ladder: levels L_2..L_{depth+1}, self-covering and chained up and
// down within [0,1/n], plus H_0, H_1 tied to L_2 by k1-step coverings. Every
// covering relation is certified at construction.
struct Ladder {
    LadderVariant variant;
    std::size_t depth = 0;                // chains exist for n = 2..depth
    std::vector<RatInterval> levels;      // levels[i] = L_{i+2}
    struct Chain {
        std::size_t n = 0;                // chain label (n, k_n)
        std::size_t k = 0;                // steps in each direction
        std::vector<RatInterval> up;      // L_n ... L_{n+1}, k+1 intervals
        std::vector<RatInterval> down;    // L_{n+1} ... L_n
    };
    std::vector<Chain> chains;
    RatInterval h0, h1;
    std::size_t k1 = 0;

    const RatInterval& level(std::size_t n) const;  // L_n
    const Chain& chain(std::size_t n) const;
};

// fixed_points: decreasing fixed points p_n < 1/n required by the
// fixed-point-hung variant (index 2 first); ignored by the nested variant.
Ladder build_ladder(const PLMap& f, std::size_t depth, LadderVariant variant,
                    std::vector<Rat> fixed_points = {});

// Flat interval schedule realizing the symbolic coding pattern for a binary
// word alpha: H-legs expanded through exact images, ladder chains in between;
// stage s climbs L_2..L_{s+3} and back down. Consecutive coverings certified.
struct CodingSchedule {
    Word alpha;
    std::vector<RatInterval> intervals;
    std::vector<std::size_t> h_positions;  // schedule indices sitting in H_0/H_1

    std::size_t steps() const { return intervals.size() - 1; }
};

CodingSchedule coding_schedule(const PLMap& f, const Ladder& ladder, const Word& alpha);

// Backward refinement along the schedule; any point of the result realizes
// the itinerary. Component choice is leftmost for determinism.
RatInterval trace_point(const PLMap& f, const std::vector<RatInterval>& schedule);

struct TraceReport {
    bool itinerary_ok = false;
    std::size_t checked_steps = 0;
    std::vector<Rat> orbit;  // f^j(b) for j = 0..steps
    // per threshold 1/n: the visit set {j : f^j(b) < 1/n} and its profile
    struct ThresholdGaps {
        std::size_t n = 0;
        WindowSet visits;
        GapProfile profile;
        std::size_t schedule_excursion = 0;  // longest run of steps not confined below 1/n
    };
    std::vector<ThresholdGaps> thresholds;
};

TraceReport verify_trace(const PLMap& f, const Rat& b,
                         const std::vector<RatInterval>& schedule, std::size_t max_threshold);

}  // namespace symdyn
