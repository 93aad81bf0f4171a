#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "symdyn/errors.hpp"

namespace symdyn {

// A finite window of a subset of the naturals: the members found in
// [0, horizon]. All classifications downstream are statements about this
// window, never about the underlying infinite set.
class WindowSet {
  public:
    WindowSet(std::vector<std::size_t> members, std::size_t horizon);

    static WindowSet from_predicate(std::size_t horizon,
                                    const std::function<bool(std::size_t)>& member);
    // Run-length encoded intervals, e.g. "0-4,7,9-12".
    static WindowSet from_rle(const std::string& text, std::size_t horizon);

    const std::vector<std::size_t>& members() const { return members_; }
    std::size_t horizon() const { return horizon_; }
    bool empty() const { return members_.empty(); }
    bool contains(std::size_t n) const;

    WindowSet complement() const;
    WindowSet restricted(std::size_t lo, std::size_t hi) const;  // members in [lo,hi], same horizon bounds

    std::string to_rle() const;

    // Maximal runs of consecutive integers, as (start, length).
    std::vector<std::pair<std::size_t, std::size_t>> runs() const;

  private:
    std::vector<std::size_t> members_;
    std::size_t horizon_;
};

// Gap statistics over the window. Gaps are differences between consecutive
// members with sentinels at -1 and horizon+1, so holes touching either end
// of the window count.
struct GapProfile {
    std::size_t max_gap = 0;       // horizon+1 for the empty set
    std::size_t longest_run = 0;   // longest block of consecutive members
    std::size_t longest_hole = 0;  // longest block of consecutive absentees
};

GapProfile gap_profile(const WindowSet& s);

// Horizon-relative verdicts for the classes of subsets of N. Each verdict is
// a numeric statement about the window; "evidence" flags encode whether the
// statistic stabilized by mid-window or was still growing at the horizon.
struct ClassifyVerdict {
    GapProfile profile;

    // Syndetic: gap bound seen in the tail vs. the first half. The gap bound
    // counts as stabilized when the tail does not set a new record.
    std::size_t first_half_max_gap = 0;
    std::size_t tail_max_gap = 0;
    bool syndetic_evidence = false;
    std::size_t syndetic_gap = 0;  // = tail_max_gap when evidence holds
    std::size_t largest_tail_hole_start = 0;
    std::size_t largest_tail_hole_len = 0;  // not-syndetic witness when > first-half record

    // Thick: a run of this length exists in the window.
    std::size_t thick_run = 0;

    // Co-finite: the window ends with a complete tail [cofinite_tail_start, horizon].
    bool cofinite_tail = false;
    std::size_t cofinite_tail_start = 0;

    // Thickly syndetic: largest n such that for every m <= n the set of
    // starts of runs of length m is syndetic (by the same tail rule).
    std::size_t thickly_syndetic_depth = 0;

    // Piecewise syndetic: longest subwindow whose internal gaps stay within
    // the first-half gap record; reported as (gap bound, window).
    std::size_t pw_gap_bound = 0;
    std::size_t pw_window_start = 0;
    std::size_t pw_window_len = 0;
};

ClassifyVerdict classify_window(const WindowSet& s);

// Split of a thick window into two thick halves: alternating chunks of
// doubling length walked along the members, so both q and its complement
// inherit arbitrarily long runs from p.
struct ThickSplit {
    WindowSet q;
    WindowSet complement;  // [0,horizon] \ q
    GapProfile q_profile;
    GapProfile complement_profile;
};

ThickSplit split_thick(const WindowSet& p, std::size_t requested_run);

}  // namespace symdyn
