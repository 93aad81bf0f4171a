#include "symdyn/rotation.hpp"

#include <cmath>

namespace symdyn {

std::size_t rotation_milestone(std::size_t n) {
    return n * (n + 1) / 2;
}

namespace {

// c_{j+1} = c_j + 1 + 1/n on block n odd, c_j + 1 - 1/n on block n even,
// where block n is m(n-1) <= j < m(n); c_0 = 0.
std::vector<Rat> coeff_table(std::size_t j_max) {
    std::vector<Rat> c{Rat(0)};
    c.reserve(j_max + 1);
    std::size_t n = 1;
    std::size_t block_end = rotation_milestone(1);
    for (std::size_t j = 0; j < j_max; ++j) {
        while (j >= block_end) {
            ++n;
            block_end = rotation_milestone(n);
        }
        Rat step = Rat(1) + Rat(n % 2 == 1 ? 1 : -1, static_cast<long long>(n));
        c.push_back(c.back() + step);
    }
    return c;
}

Rat height_at(std::size_t j) {
    if (j == 0) {
        return Rat(1);
    }
    std::size_t n = 1;
    while (rotation_milestone(n) < j) {
        ++n;
    }
    return Rat(1, static_cast<long long>(n));
}

}  // namespace

OrbitTerm orbit_term(long long j) {
    if (j < 0) {
        // z_j = (e(j alpha), 2 - 1/(1-j))
        return OrbitTerm{j, Rat(j), Rat(2) - Rat(1, 1 - j)};
    }
    auto ju = static_cast<std::size_t>(j);
    auto c = coeff_table(ju);
    return OrbitTerm{j, c[ju], height_at(ju)};
}

std::vector<MilestoneCheck> milestone_check(std::size_t n_max) {
    if (n_max < 1) {
        throw PreconditionError("milestone check needs n_max >= 1");
    }
    std::size_t j_max = rotation_milestone(n_max);
    auto c = coeff_table(j_max);
    std::vector<MilestoneCheck> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::size_t m = rotation_milestone(n);
        Rat expected(static_cast<long long>(n % 2 == 1 ? m + 1 : m));
        out.push_back({n, m, c[m], c[m] == expected});
    }
    return out;
}

DistanceProfile pair_distance_profile(std::size_t horizon, std::size_t start_offset,
                                      const std::vector<double>& epsilons, double alpha) {
    if (start_offset > 1) {
        throw PreconditionError("start offset must be 0 (the (1,0)-orbit) or 1 (F(1,0))");
    }
    DistanceProfile prof;
    prof.alpha = alpha;
    prof.start_offset = start_offset;
    auto c = coeff_table(horizon);

    constexpr double kTau = 6.283185307179586476925287;
    prof.series.reserve(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
        Rat diff = c[n] - Rat(static_cast<long long>(n + start_offset));
        double theta = kTau * diff.to_double() * alpha;
        double chord = 2.0 * std::fabs(std::sin(theta / 2.0));
        double h = height_at(n).to_double();
        double d = std::sqrt(chord * chord + h * h);
        prof.series.push_back({n, c[n], height_at(n), d});
    }

    for (double eps : epsilons) {
        std::vector<std::size_t> close;
        for (std::size_t n = 0; n <= horizon; ++n) {
            if (prof.series[n].distance < eps) close.push_back(n);
        }
        DistanceProfile::ClosenessGaps cg{eps, WindowSet(std::move(close), horizon), {}};
        // max gap inside each quarter of the horizon
        for (int q = 0; q < 4; ++q) {
            std::size_t lo = horizon * q / 4;
            std::size_t hi = horizon * (q + 1) / 4;
            std::size_t prev = lo;
            std::size_t worst = 0;
            for (std::size_t m : cg.close.members()) {
                if (m < lo || m > hi) continue;
                worst = std::max(worst, m - prev);
                prev = m;
            }
            worst = std::max(worst, hi - prev);
            cg.quarter_max_gaps.push_back(worst);
        }
        prof.closeness.push_back(std::move(cg));
    }
    return prof;
}

}  // namespace symdyn
