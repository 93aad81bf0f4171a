#pragma once

#include <cstdint>
#include <vector>

#include "symdyn/nat_sets.hpp"
#include "symdyn/rat.hpp"

namespace symdyn {

// The circle-times-line homeomorphism with proximal but never syndetically
// proximal pairs. Orbit terms carry the angle as an exact rational multiple
// of the single irrational alpha, so the milestone identities are integer
// checks; floats enter only in the final distance evaluation.

// m(n) = 1 + 2 + ... + n
std::size_t rotation_milestone(std::size_t n);

struct OrbitTerm {
    long long j = 0;
    Rat angle_coeff;  // c_j: the point's angle is e(c_j * alpha)
    Rat height;       // y_j
};

OrbitTerm orbit_term(long long j);

struct MilestoneCheck {
    std::size_t n = 0;
    std::size_t m = 0;       // m(n)
    Rat coeff;               // c_{m(n)}
    bool exact = false;      // c = m(n)+1 for odd n, c = m(n) for even n
};

std::vector<MilestoneCheck> milestone_check(std::size_t n_max);

struct DistancePoint {
    std::size_t n = 0;
    Rat coeff;
    Rat height;
    double distance = 0;  // to the bottom-circle orbit in R^3
};

struct DistanceProfile {
    double alpha = 0;
    std::size_t start_offset = 0;  // 0: against the (1,0)-orbit; 1: against F(1,0)
    std::vector<DistancePoint> series;
    // per epsilon: the set of close times and the max gap per quarter window
    struct ClosenessGaps {
        double epsilon = 0;
        WindowSet close;
        std::vector<std::size_t> quarter_max_gaps;
    };
    std::vector<ClosenessGaps> closeness;
};

// Default alpha: (sqrt(5)-1)/2. Any irrational works; the milestones are
// exact regardless.
DistanceProfile pair_distance_profile(std::size_t horizon, std::size_t start_offset,
                                      const std::vector<double>& epsilons,
                                      double alpha = 0.6180339887498948482);

}  // namespace symdyn
