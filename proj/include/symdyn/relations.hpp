#pragma once

#include <optional>
#include <vector>

#include "symdyn/nat_sets.hpp"
#include "symdyn/streams.hpp"

namespace symdyn {

// All distance talk is integer-exact: for shift orbits, "within 2^{-m}" is
// the statement that the two streams agree on a window of length m. The
// close set at level m is {n <= horizon : x_[n,n+m) = y_[n,n+m)}; symbols up
// to horizon + m are consumed and reported as the lookahead.
struct PairLevel {
    std::size_t level;  // m, the agreement-window length; threshold 2^{-m}
    WindowSet close;
    GapProfile close_profile;
    GapProfile far_profile;
    bool close_syndetic_evidence;
    std::size_t close_tail_gap;
};

struct PairVerdict {
    std::size_t horizon = 0;
    std::size_t lookahead = 0;  // extra symbols consumed past the horizon
    std::vector<PairLevel> levels;

    // index of the last n <= horizon with x_n != y_n; absent when the
    // streams agree on the whole inspected range
    std::optional<std::size_t> last_difference_index;

    // tail estimates of liminf/limsup of d(sigma^n x, sigma^n y) over
    // n in [horizon/2, horizon], as dyadic exponents: distance ~ 2^{-e}.
    std::size_t liminf_exponent = 0;
    bool liminf_hit_cap = false;  // agreement ran past the inspected range
    std::size_t limsup_exponent = 0;
    bool limsup_hit_cap = false;

    // syndetic-proximality evidence: bounded close-set gaps at every level
    bool sprox_evidence = false;

    const PairLevel& at_level(std::size_t m) const;
    double liminf_estimate() const;
    double limsup_estimate() const;
};

PairVerdict pair_profile(const SymbolStream& x, const SymbolStream& y, std::size_t horizon,
                         const std::vector<std::size_t>& levels);

// Running lower-density data for the distribution functions Phi / Phi*.
// d(sigma^i x, sigma^i y) < t iff the agreement length at i reaches
// exponent(t), the least e with 2^{-e} < t.
struct DensityProfile {
    double threshold = 0;
    std::size_t exponent = 0;
    std::size_t horizon = 0;
    std::size_t tail_begin = 0;  // tail window [tail_begin, horizon]
    std::vector<double> ratios;  // r_n for n = 1..horizon
    double phi_est = 0;          // min of r_n over the tail window
    double phi_star_est = 0;     // max of r_n over the tail window
    std::size_t close_count = 0;
};

DensityProfile dc1_profile(const SymbolStream& x, const SymbolStream& y, std::size_t horizon,
                           double threshold, double tail_fraction = 0.5);

// Check of the density bound Phi(t) >= 1/(2M) that a syndetic gap M forces,
// with slack 2M/horizon for the finite window.
enum class BoundCheck { Holds, Fails, Skipped };

struct SproxDensityCheck {
    BoundCheck verdict = BoundCheck::Skipped;
    std::size_t gap = 0;     // M
    double bound = 0;        // 1/(2M) - slack
    double phi_est = 0;
};

SproxDensityCheck sprox_density_bound_check(const PairVerdict& verdict,
                                            const DensityProfile& profile);

// N(x, C[w]) within the horizon: the times the orbit of x enters the
// cylinder of w.
WindowSet hitting_times(const SymbolStream& x, const Word& w, std::size_t horizon);

// Coordinatewise addition modulo the alphabet size; 0^infinity is the
// identity. Exactly preserves first-difference indices of pairs.
SymbolStream translate_mod(const SymbolStream& x, const SymbolStream& z);

}  // namespace symdyn
