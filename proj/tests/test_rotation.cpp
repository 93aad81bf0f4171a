#include <doctest.h>

#include <cmath>

#include "symdyn/rotation.hpp"

using namespace symdyn;

TEST_CASE("orbit terms match the listed sequence") {
    CHECK(rotation_milestone(0) == 0);
    CHECK(rotation_milestone(4) == 10);

    auto t1 = orbit_term(1);
    CHECK(t1.angle_coeff == Rat(2));
    CHECK(t1.height == Rat(1));

    auto t2 = orbit_term(2);
    CHECK(t2.angle_coeff == Rat(5, 2));
    CHECK(t2.height == Rat(1, 2));

    auto t7 = orbit_term(7);
    CHECK(t7.angle_coeff == Rat(31, 4));
    CHECK(t7.height == Rat(1, 4));

    auto t6 = orbit_term(6);
    CHECK(t6.angle_coeff == Rat(7));
    CHECK(t6.height == Rat(1, 3));

    // backward orbit: z_j = (e(j alpha), 2 - 1/(1-j))
    auto tm3 = orbit_term(-3);
    CHECK(tm3.angle_coeff == Rat(-3));
    CHECK(tm3.height == Rat(2) - Rat(1, 4));
}

TEST_CASE("heights are constant on blocks") {
    for (std::size_t n = 1; n <= 12; ++n) {
        for (std::size_t j = rotation_milestone(n - 1) + 1; j <= rotation_milestone(n); ++j) {
            CHECK(orbit_term(static_cast<long long>(j)).height ==
                  Rat(1, static_cast<long long>(n)));
        }
    }
}

TEST_CASE("milestone identities hold exactly up to 50") {
    auto checks = milestone_check(50);
    REQUIRE(checks.size() == 50);
    for (const auto& c : checks) {
        CAPTURE(c.n);
        CHECK(c.exact);
    }
    // the telescoped block corrections reproduce the parity rule
    CHECK(checks[0].coeff == Rat(2));   // m(1) = 1, odd: m+1
    CHECK(checks[1].coeff == Rat(3));   // m(2) = 3, even: m
    CHECK(checks[3].coeff == Rat(10));  // m(4) = 10, even: m
}

TEST_CASE("even milestones touch the bottom orbit at exactly height 1/n") {
    auto prof = pair_distance_profile(rotation_milestone(20), 0, {0.25});
    for (std::size_t n = 2; n <= 20; n += 2) {
        const auto& pt = prof.series[rotation_milestone(n)];
        // angle coefficients agree exactly, so the distance is the height
        CHECK(pt.coeff == Rat(static_cast<long long>(rotation_milestone(n))));
        CHECK(std::fabs(pt.distance - 1.0 / static_cast<double>(n)) < 1e-12);
    }
    // odd milestones do the same against the F(1,0)-started orbit
    auto prof1 = pair_distance_profile(rotation_milestone(21), 1, {0.25});
    for (std::size_t n = 1; n <= 21; n += 2) {
        const auto& pt = prof1.series[rotation_milestone(n)];
        CHECK(pt.coeff == Rat(static_cast<long long>(rotation_milestone(n) + 1)));
        CHECK(std::fabs(pt.distance - 1.0 / static_cast<double>(n)) < 1e-12);
    }
}

TEST_CASE("closeness gaps to the bottom orbit grow") {
    std::size_t horizon = rotation_milestone(40);
    auto prof = pair_distance_profile(horizon, 0, {0.2});
    REQUIRE(prof.closeness.size() == 1);
    const auto& gaps = prof.closeness.front().quarter_max_gaps;
    REQUIRE(gaps.size() == 4);
    CHECK(gaps[0] < gaps[1]);
    CHECK(gaps[1] < gaps[2]);
    CHECK(gaps[2] < gaps[3]);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(milestone_check(0), PreconditionError);
    CHECK_THROWS_AS(pair_distance_profile(10, 2, {0.5}), PreconditionError);
}
