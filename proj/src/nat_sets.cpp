#include "symdyn/nat_sets.hpp"

#include <algorithm>
#include <sstream>

namespace symdyn {

WindowSet::WindowSet(std::vector<std::size_t> members, std::size_t horizon)
    : members_(std::move(members)), horizon_(horizon) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() > horizon_) {
        throw DomainError("window member beyond horizon");
    }
}

WindowSet WindowSet::from_predicate(std::size_t horizon,
                                    const std::function<bool(std::size_t)>& member) {
    std::vector<std::size_t> ms;
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (member(n)) {
            ms.push_back(n);
        }
    }
    return WindowSet(std::move(ms), horizon);
}

WindowSet WindowSet::from_rle(const std::string& text, std::size_t horizon) {
    std::vector<std::size_t> ms;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto dash = item.find('-');
        std::size_t lo = 0;
        std::size_t hi = 0;
        try {
            if (dash == std::string::npos) {
                lo = hi = std::stoull(item);
            } else {
                lo = std::stoull(item.substr(0, dash));
                hi = std::stoull(item.substr(dash + 1));
            }
        } catch (const std::exception&) {
            throw DomainError("cannot parse interval '" + item + "'");
        }
        if (hi < lo) {
            throw DomainError("descending interval '" + item + "'");
        }
        for (std::size_t n = lo; n <= hi; ++n) {
            ms.push_back(n);
        }
    }
    return WindowSet(std::move(ms), horizon);
}

bool WindowSet::contains(std::size_t n) const {
    return std::binary_search(members_.begin(), members_.end(), n);
}

WindowSet WindowSet::complement() const {
    std::vector<std::size_t> ms;
    ms.reserve(horizon_ + 1 - members_.size());
    std::size_t j = 0;
    for (std::size_t n = 0; n <= horizon_; ++n) {
        if (j < members_.size() && members_[j] == n) {
            ++j;
        } else {
            ms.push_back(n);
        }
    }
    return WindowSet(std::move(ms), horizon_);
}

WindowSet WindowSet::restricted(std::size_t lo, std::size_t hi) const {
    std::vector<std::size_t> ms;
    for (std::size_t m : members_) {
        if (m >= lo && m <= hi) {
            ms.push_back(m);
        }
    }
    return WindowSet(std::move(ms), horizon_);
}

std::vector<std::pair<std::size_t, std::size_t>> WindowSet::runs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < members_.size()) {
        std::size_t j = i;
        while (j + 1 < members_.size() && members_[j + 1] == members_[j] + 1) {
            ++j;
        }
        out.emplace_back(members_[i], j - i + 1);
        i = j + 1;
    }
    return out;
}

std::string WindowSet::to_rle() const {
    std::string out;
    for (auto [start, len] : runs()) {
        if (!out.empty()) out += ",";
        out += std::to_string(start);
        if (len > 1) {
            out += "-" + std::to_string(start + len - 1);
        }
    }
    return out;
}

namespace {

// Consecutive-member differences with sentinels at -1 and horizon+1, so a
// hole touching either end of the window contributes.
std::vector<std::size_t> gaps_with_sentinels(const WindowSet& s) {
    std::vector<std::size_t> gaps;
    const auto& ms = s.members();
    gaps.reserve(ms.size() + 1);
    std::size_t prev_plus1 = 0;  // previous member + 1; starts at sentinel -1 + 1
    for (std::size_t m : ms) {
        gaps.push_back(m + 1 - prev_plus1);
        prev_plus1 = m + 1;
    }
    gaps.push_back(s.horizon() + 2 - prev_plus1);
    return gaps;
}

}  // namespace

GapProfile gap_profile(const WindowSet& s) {
    GapProfile p;
    if (s.empty()) {
        p.max_gap = s.horizon() + 1;
        p.longest_run = 0;
        p.longest_hole = s.horizon() + 1;
        return p;
    }
    for (std::size_t g : gaps_with_sentinels(s)) {
        p.max_gap = std::max(p.max_gap, g);
    }
    for (auto [start, len] : s.runs()) {
        p.longest_run = std::max(p.longest_run, len);
    }
    p.longest_hole = p.max_gap - 1;
    return p;
}

namespace {

struct GapSplit {
    std::size_t first_half_max = 0;  // gaps ending at or before mid
    std::size_t tail_max = 0;        // gaps ending after mid
    std::size_t tail_record_start = 0;
    std::size_t tail_record_len = 0;
};

GapSplit split_gaps(const WindowSet& s) {
    GapSplit r;
    if (s.empty()) {
        r.tail_max = s.horizon() + 1;
        r.tail_record_len = s.horizon() + 1;
        return r;
    }
    std::size_t mid = s.horizon() / 2;
    const auto& ms = s.members();
    // walk (prev, next) pairs including sentinels
    long long prev = -1;
    auto feed = [&](long long next) {
        auto gap = static_cast<std::size_t>(next - prev);
        if (next <= static_cast<long long>(mid)) {
            r.first_half_max = std::max(r.first_half_max, gap);
        } else if (gap > r.tail_max) {
            r.tail_max = gap;
            r.tail_record_start = static_cast<std::size_t>(prev + 1);
            r.tail_record_len = gap - 1;
        }
        prev = next;
    };
    for (std::size_t m : ms) {
        feed(static_cast<long long>(m));
    }
    feed(static_cast<long long>(s.horizon()) + 1);
    return r;
}

// Syndeticity of a window by the stabilized-gap rule.
bool syndetic_by_tail_rule(const WindowSet& s) {
    if (s.empty()) {
        return false;
    }
    GapSplit g = split_gaps(s);
    return g.tail_max <= g.first_half_max;
}

}  // namespace

ClassifyVerdict classify_window(const WindowSet& s) {
    if (s.horizon() < 1) {
        throw PreconditionError("classify_window requires horizon >= 1");
    }
    ClassifyVerdict v;
    v.profile = gap_profile(s);
    v.thick_run = v.profile.longest_run;

    GapSplit g = split_gaps(s);
    v.first_half_max_gap = g.first_half_max;
    v.tail_max_gap = g.tail_max;
    v.largest_tail_hole_start = g.tail_record_start;
    v.largest_tail_hole_len = g.tail_record_len;
    v.syndetic_evidence = !s.empty() && g.tail_max <= g.first_half_max;
    v.syndetic_gap = v.syndetic_evidence ? g.tail_max : 0;

    if (!s.empty() && s.members().back() == s.horizon()) {
        auto rs = s.runs();
        v.cofinite_tail = true;
        v.cofinite_tail_start = rs.back().first;
    }

    // thickly syndetic depth: runs-of-length-m starts must be syndetic for
    // every m up to the depth. Capped: deeper certificates cost quadratic
    // time and say nothing new at desk scale.
    constexpr std::size_t kDepthCap = 64;
    for (std::size_t m = 1; m <= std::min(v.profile.longest_run, kDepthCap); ++m) {
        if (s.horizon() < m) break;
        std::vector<std::size_t> starts;
        for (auto [start, len] : s.runs()) {
            if (len >= m) {
                for (std::size_t i = start; i + m <= start + len; ++i) {
                    starts.push_back(i);
                }
            }
        }
        WindowSet run_starts(std::move(starts), s.horizon() - m + 1);
        if (!syndetic_by_tail_rule(run_starts)) {
            break;
        }
        v.thickly_syndetic_depth = m;
    }

    // piecewise syndetic: longest stretch whose internal gaps stay within the
    // first-half record (or 1 if no record exists yet)
    std::size_t bound = std::max<std::size_t>(g.first_half_max, 1);
    v.pw_gap_bound = bound;
    const auto& ms = s.members();
    std::size_t i = 0;
    while (i < ms.size()) {
        std::size_t j = i;
        while (j + 1 < ms.size() && ms[j + 1] - ms[j] <= bound) {
            ++j;
        }
        std::size_t len = ms[j] - ms[i] + 1;
        if (len > v.pw_window_len) {
            v.pw_window_len = len;
            v.pw_window_start = ms[i];
        }
        i = j + 1;
    }
    return v;
}

ThickSplit split_thick(const WindowSet& p, std::size_t requested_run) {
    GapProfile prof = gap_profile(p);
    if (prof.longest_run < requested_run) {
        throw InfeasibleError("split_thick: window has no run of length " +
                              std::to_string(requested_run));
    }
    std::vector<std::size_t> q_members;
    bool to_q = true;
    std::size_t quota = 1;
    std::size_t used = 0;
    for (std::size_t m : p.members()) {
        if (to_q) {
            q_members.push_back(m);
        }
        if (++used == quota) {
            to_q = !to_q;
            quota *= 2;
            used = 0;
        }
    }
    ThickSplit out{WindowSet(std::move(q_members), p.horizon()),
                   WindowSet({}, p.horizon()),
                   {},
                   {}};
    out.complement = out.q.complement();
    out.q_profile = gap_profile(out.q);
    out.complement_profile = gap_profile(out.complement);
    if (out.q_profile.longest_run < requested_run ||
        out.complement_profile.longest_run < requested_run) {
        throw InfeasibleError("split_thick: cannot give both sides a run of length " +
                              std::to_string(requested_run) + " within the horizon");
    }
    return out;
}

}  // namespace symdyn
