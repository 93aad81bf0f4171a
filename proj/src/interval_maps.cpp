#include "symdyn/interval_maps.hpp"

#include <algorithm>
#include <sstream>

namespace symdyn {

RatInterval::RatInterval(Rat lo, Rat hi) : a(std::move(lo)), b(std::move(hi)) {
    if (b < a) {
        throw DomainError("descending interval [" + a.str() + ", " + b.str() + "]");
    }
}

Rat dist(const RatInterval& x, const RatInterval& y) {
    if (x.b < y.a) return y.a - x.b;
    if (y.b < x.a) return x.a - y.b;
    return Rat(0);
}

PLMap::PLMap(std::vector<Rat> breakpoints, std::vector<Rat> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2 || breakpoints_.size() != values_.size()) {
        throw DomainError("piecewise-linear map needs matching breakpoint/value lists");
    }
    if (!(breakpoints_.front() == Rat(0)) || !(breakpoints_.back() == Rat(1))) {
        throw DomainError("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        if (!(breakpoints_[i] < breakpoints_[i + 1])) {
            throw DomainError("breakpoints must be strictly increasing");
        }
    }
    for (const Rat& v : values_) {
        if (v < Rat(0) || Rat(1) < v) {
            throw DomainError("map value outside [0,1]");
        }
    }
}

PLMap PLMap::parse(const std::string& text) {
    std::vector<Rat> ts;
    std::vector<Rat> vs;
    std::stringstream ss(text);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
        std::stringstream ps(pair);
        std::string t, v;
        if (!(ps >> t >> v)) {
            if (t.empty()) continue;
            throw DomainError("cannot parse breakpoint pair '" + pair + "'");
        }
        ts.push_back(Rat::parse(t));
        vs.push_back(Rat::parse(v));
    }
    return PLMap(std::move(ts), std::move(vs));
}

std::string PLMap::str() const {
    std::string out;
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (!out.empty()) out += "; ";
        out += breakpoints_[i].str() + " " + values_[i].str();
    }
    return out;
}

PLMap PLMap::tent() {
    return PLMap({Rat(0), Rat(1, 2), Rat(1)}, {Rat(0), Rat(1), Rat(0)});
}

PLMap PLMap::staircase(std::size_t levels) {
    if (levels < 3) {
        throw DomainError("staircase fixture needs at least 3 levels");
    }
    auto pow2 = [](std::size_t k) { return Rat(BigInt(1), BigInt(1) << k); };
    Rat dip = pow2(levels + 1);
    std::vector<Rat> ts{Rat(0)};
    std::vector<Rat> vs{Rat(0)};
    // bottom bump on [0, 2^-levels]
    ts.push_back(pow2(levels + 1));
    vs.push_back(pow2(levels - 1));
    ts.push_back(pow2(levels));
    vs.push_back(pow2(levels));
    // one dip-and-rise level per fixed point: [2^{-k-1}, 2^{-k}]
    for (std::size_t k = levels - 1; k >= 1; --k) {
        Rat left = pow2(k + 1);
        Rat width = pow2(k + 1);
        Rat third = width / Rat(3);
        Rat rise = k == 1 ? Rat(1) : pow2(k - 1);
        ts.push_back(left + third);
        vs.push_back(dip);
        ts.push_back(left + third * Rat(2));
        vs.push_back(rise);
        ts.push_back(left + width);
        vs.push_back(left + width);  // fixed point 2^{-k}
        if (k == 1) break;
    }
    // sweep on [1/2, 1]
    ts.push_back(Rat(5, 8));
    vs.push_back(Rat(1));
    ts.push_back(Rat(1));
    vs.push_back(pow2(levels + 2));
    return PLMap(std::move(ts), std::move(vs));
}

Rat PLMap::eval(const Rat& x) const {
    if (x < Rat(0) || Rat(1) < x) {
        throw DomainError("evaluation outside [0,1]");
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin());
    if (i > 0) --i;
    if (i + 1 >= breakpoints_.size()) i = breakpoints_.size() - 2;
    const Rat& t0 = breakpoints_[i];
    const Rat& t1 = breakpoints_[i + 1];
    const Rat& v0 = values_[i];
    const Rat& v1 = values_[i + 1];
    return v0 + (x - t0) * (v1 - v0) / (t1 - t0);
}

RatInterval PLMap::image(const RatInterval& k) const {
    if (k.a < Rat(0) || Rat(1) < k.b) {
        throw DomainError("interval outside [0,1]");
    }
    Rat lo = eval(k.a);
    Rat hi = lo;
    auto widen = [&](const Rat& v) {
        if (v < lo) lo = v;
        if (hi < v) hi = v;
    };
    widen(eval(k.b));
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        if (k.a < breakpoints_[i] && breakpoints_[i] < k.b) {
            widen(values_[i]);
        }
    }
    return RatInterval(lo, hi);
}

bool PLMap::covers(const RatInterval& k, const RatInterval& l) const {
    return image(k).contains(l);
}

std::vector<RatInterval> PLMap::preimage(const RatInterval& l) const {
    std::vector<RatInterval> parts;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        const Rat& t0 = breakpoints_[i];
        const Rat& t1 = breakpoints_[i + 1];
        const Rat& v0 = values_[i];
        const Rat& v1 = values_[i + 1];
        if (v0 == v1) {
            if (l.contains(v0)) {
                parts.emplace_back(t0, t1);
            }
            continue;
        }
        Rat vlo = min(v0, v1);
        Rat vhi = max(v0, v1);
        Rat clo = max(vlo, l.a);
        Rat chi = min(vhi, l.b);
        if (chi < clo) continue;
        Rat slope = (v1 - v0) / (t1 - t0);
        Rat x1 = t0 + (clo - v0) / slope;
        Rat x2 = t0 + (chi - v0) / slope;
        parts.emplace_back(min(x1, x2), max(x1, x2));
    }
    std::sort(parts.begin(), parts.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.a < y.a; });
    std::vector<RatInterval> merged;
    for (const auto& p : parts) {
        if (!merged.empty() && p.a <= merged.back().b) {
            merged.back() = RatInterval(merged.back().a, max(merged.back().b, p.b));
        } else {
            merged.push_back(p);
        }
    }
    return merged;
}

std::vector<RatInterval> PLMap::fixed_points() const {
    std::vector<RatInterval> out;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
        const Rat& t0 = breakpoints_[i];
        const Rat& t1 = breakpoints_[i + 1];
        const Rat& v0 = values_[i];
        const Rat& v1 = values_[i + 1];
        // g(x) = f(x) - x is linear on the piece
        Rat g0 = v0 - t0;
        Rat g1 = v1 - t1;
        if (g0 == Rat(0) && g1 == Rat(0)) {
            out.emplace_back(t0, t1);  // whole piece on the diagonal
            continue;
        }
        if (g0 == g1) {
            if (g0 == Rat(0)) out.emplace_back(t0, t0);
            continue;
        }
        if ((g0.sign() <= 0 && g1.sign() >= 0) || (g0.sign() >= 0 && g1.sign() <= 0)) {
            Rat x = t0 - g0 * (t1 - t0) / (g1 - g0);
            out.emplace_back(x, x);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const RatInterval& x, const RatInterval& y) { return x.a < y.a; });
    std::vector<RatInterval> dedup;
    for (const auto& p : out) {
        if (!dedup.empty() && p.a <= dedup.back().b && p.b <= dedup.back().b) {
            continue;
        }
        if (!dedup.empty() && p.a <= dedup.back().b) {
            dedup.back() = RatInterval(dedup.back().a, p.b);
            continue;
        }
        dedup.push_back(p);
    }
    return dedup;
}

const RatInterval& Ladder::level(std::size_t n) const {
    if (n < 2 || n - 2 >= levels.size()) {
        throw DomainError("ladder has no level L_" + std::to_string(n));
    }
    return levels[n - 2];
}

const Ladder::Chain& Ladder::chain(std::size_t n) const {
    for (const auto& c : chains) {
        if (c.n == n) return c;
    }
    throw DomainError("ladder has no chain (" + std::to_string(n) + ", k)");
}

namespace {

void certify(const PLMap& f, const RatInterval& k, const RatInterval& l,
             const std::string& what) {
    if (!f.covers(k, l)) {
        throw LadderError("covering failed: " + what + ": " + k.str() + " => " + l.str());
    }
}

void certify_inside(const RatInterval& j, const Rat& bound, const std::string& what) {
    if (Rat(0) > j.a || bound < j.b) {
        throw LadderError("chain interval escapes [0," + bound.str() + "]: " + what + ": " +
                          j.str());
    }
}

// k1 with f^{k1}(L2) => H_i and f^{k1}(H_i) => L2 for i = 0,1
std::size_t find_k1(const PLMap& f, const RatInterval& l2, const RatInterval& h0,
                    const RatInterval& h1) {
    constexpr std::size_t kMax = 64;
    RatInterval il = l2;
    RatInterval i0 = h0;
    RatInterval i1 = h1;
    for (std::size_t k = 1; k <= kMax; ++k) {
        il = f.image(il);
        i0 = f.image(i0);
        i1 = f.image(i1);
        if (il.contains(h0) && il.contains(h1) && i0.contains(l2) && i1.contains(l2)) {
            return k;
        }
    }
    throw LadderError("no k1 <= " + std::to_string(kMax) +
                      " with the four H-coverings; is the map mixing?");
}

Ladder build_nested_ladder(const PLMap& f, std::size_t depth) {
    if (!(f.eval(Rat(0)) == Rat(0))) {
        throw PreconditionError("variant needs f(0) = 0");
    }
    // the H construction walks a preimage chain ending in a positive zero
    std::vector<Rat> ys;
    {
        std::vector<Rat> cur;
        for (const auto& comp : f.preimage(RatInterval(Rat(0), Rat(0)))) {
            if (Rat(0) < comp.a || Rat(0) < comp.b) {
                cur.push_back(max(comp.a, Rat(0)) == Rat(0) ? comp.b : comp.a);
            }
        }
        if (cur.empty()) {
            throw PreconditionError("variant needs some x > 0 with f(x) = 0");
        }
        ys.push_back(cur.front());
        for (int step = 0; step < 2; ++step) {
            RatInterval target(ys.back(), ys.back());
            auto comps = f.preimage(target);
            if (comps.empty()) {
                throw LadderError("preimage chain for H broke at " + ys.back().str());
            }
            Rat pick = comps.front().a;
            if (pick == Rat(0) && comps.front().b > Rat(0)) pick = comps.front().b;
            ys.push_back(pick);
        }
    }

    Ladder lad;
    lad.variant = LadderVariant::NestedAtZero;
    lad.depth = depth;

    // nested levels L_n = [0, b_n] with f(b_n) > b_n
    Rat prev_b = Rat(1);
    for (std::size_t n = 2; n <= depth + 1; ++n) {
        Rat cap = min(prev_b, Rat(1, static_cast<long long>(n)));
        std::optional<Rat> found;
        std::vector<Rat> candidates{Rat(1, static_cast<long long>(2 * n))};
        constexpr long long kGrid = 64;
        for (long long gidx = kGrid - 1; gidx >= 1; --gidx) {
            candidates.push_back(cap * Rat(gidx, kGrid + 1));
        }
        for (const Rat& c : candidates) {
            if (!(Rat(0) < c) || !(c < cap)) continue;
            if (c < f.eval(c)) {
                found = c;
                break;
            }
        }
        if (!found) {
            throw LadderError("no b_" + std::to_string(n) + " with f(b) > b below " + cap.str());
        }
        lad.levels.emplace_back(Rat(0), *found);
        prev_b = *found;
    }

    for (std::size_t n = 2; n <= depth; ++n) {
        const RatInterval& ln = lad.level(n);
        const RatInterval& ln1 = lad.level(n + 1);
        Rat bound(1, static_cast<long long>(n));
        certify(f, ln, ln, "L_n => L_n");
        certify(f, ln1, ln1, "L_{n+1} => L_{n+1}");

        // up the chain: exact images of L_{n+1} until they cover L_n
        std::vector<RatInterval> down_imgs{ln1};
        RatInterval img = ln1;
        std::size_t m = 0;
        constexpr std::size_t kChainMax = 64;
        while (!img.contains(ln)) {
            img = f.image(img);
            ++m;
            if (m > kChainMax) {
                throw LadderError("chain L_" + std::to_string(n + 1) + " -> L_" +
                                  std::to_string(n) + " exceeded " +
                                  std::to_string(kChainMax) + " steps");
            }
            if (!img.contains(ln)) {
                certify_inside(img, bound, "ascending chain");
                down_imgs.push_back(img);
            }
        }
        down_imgs.push_back(ln);  // final covering step

        Ladder::Chain chain;
        chain.n = n;
        chain.k = std::max<std::size_t>(m, 1);
        // descending: L_n covers itself and contains L_{n+1}; pad with self-steps
        chain.up.assign(chain.k, ln);
        chain.up.push_back(ln1);
        // ascending: pad the image chain at the start with L_{n+1} self-steps
        chain.down.assign(chain.k + 1 - down_imgs.size(), ln1);
        chain.down.insert(chain.down.end(), down_imgs.begin(), down_imgs.end());
        for (std::size_t i = 0; i + 1 < chain.up.size(); ++i) {
            certify(f, chain.up[i], chain.up[i + 1], "descending chain step");
            certify_inside(chain.up[i], bound, "descending chain");
        }
        for (std::size_t i = 0; i + 1 < chain.down.size(); ++i) {
            certify(f, chain.down[i], chain.down[i + 1], "ascending chain step");
            certify_inside(chain.down[i], bound, "ascending chain");
        }
        lad.chains.push_back(std::move(chain));
    }

    // H_0, H_1 around the preimage chain y3 -> y2 -> y1 -> 0
    std::vector<Rat> inside;
    for (const Rat& y : ys) {
        if (Rat(0) < y && y < Rat(1)) inside.push_back(y);
    }
    if (inside.size() < 2) {
        throw LadderError("preimage chain gave fewer than two interior points for H");
    }
    std::sort(inside.begin(), inside.end());
    Rat a = inside[0];
    Rat b = inside[1];
    Rat delta = min(min((b - a) / Rat(4), a / Rat(2)), (Rat(1) - b) / Rat(2));
    delta = min(delta, Rat(1, 16));
    lad.h0 = RatInterval(a - delta, a + delta);
    lad.h1 = RatInterval(b - delta, b + delta);
    lad.k1 = find_k1(f, lad.level(2), lad.h0, lad.h1);
    return lad;
}

Ladder build_fixed_point_ladder(const PLMap& f, std::size_t depth, std::vector<Rat> fps) {
    if (!(f.eval(Rat(0)) == Rat(0))) {
        throw PreconditionError("variant needs f(0) = 0");
    }
    {
        auto zeros = f.preimage(RatInterval(Rat(0), Rat(0)));
        if (zeros.size() != 1 || !(zeros.front().a == Rat(0)) || !(zeros.front().b == Rat(0))) {
            throw PreconditionError("variant needs f^{-1}(0) = {0}");
        }
    }
    if (fps.size() < depth + 2) {
        throw PreconditionError("variant needs fixed points p_2..p_" + std::to_string(depth + 3));
    }
    for (std::size_t i = 0; i < fps.size(); ++i) {
        std::size_t n = i + 2;
        if (!(f.eval(fps[i]) == fps[i])) {
            throw PreconditionError("supplied p_" + std::to_string(n) + " = " + fps[i].str() +
                                    " is not fixed");
        }
        if (!(fps[i] < Rat(1, static_cast<long long>(n)))) {
            throw PreconditionError("p_" + std::to_string(n) + " must be below 1/" +
                                    std::to_string(n));
        }
        if (i > 0 && !(fps[i] < fps[i - 1])) {
            throw PreconditionError("fixed-point list must be strictly decreasing");
        }
    }
    auto p = [&](std::size_t n) -> const Rat& { return fps[n - 2]; };

    Ladder lad;
    lad.variant = LadderVariant::FixedPointHung;
    lad.depth = depth;

    // per level: a point a in (p_{n+1}, p_n) whose orbit dives below p_{n+2}
    // while staying at or below p_n
    struct LevelData {
        Rat a;
        std::vector<Rat> orbit;  // a = x_1, ..., x_{k+1} with x_{k+1} <= p_{n+2}
    };
    std::vector<LevelData> data;
    constexpr long long kGrid = 128;
    constexpr std::size_t kOrbitMax = 32;
    for (std::size_t n = 2; n <= depth + 1; ++n) {
        std::optional<LevelData> found;
        for (long long gidx = 1; gidx <= kGrid && !found; ++gidx) {
            Rat a = p(n + 1) + (p(n) - p(n + 1)) * Rat(gidx, kGrid + 1);
            std::vector<Rat> orbit{a};
            bool ok = false;
            bool bad = false;
            while (orbit.size() <= kOrbitMax) {
                Rat next = f.eval(orbit.back());
                orbit.push_back(next);
                if (p(n) < next || next <= Rat(0)) {
                    bad = true;
                    break;
                }
                if (next <= p(n + 2)) {
                    ok = true;
                    break;
                }
            }
            if (bad || !ok) continue;
            RatInterval ln(a, p(n));
            if (!f.covers(ln, ln)) continue;
            found = LevelData{a, std::move(orbit)};
        }
        if (!found) {
            throw LadderError("no L_" + std::to_string(n) +
                              " candidate with a descending orbit found on the grid");
        }
        lad.levels.emplace_back(found->a, p(n));
        data.push_back(std::move(*found));
    }

    for (std::size_t n = 2; n <= depth; ++n) {
        const RatInterval& ln = lad.level(n);
        const RatInterval& ln1 = lad.level(n + 1);
        Rat bound(1, static_cast<long long>(n));
        certify(f, ln, ln, "L_n => L_n");
        certify(f, ln1, ln1, "L_{n+1} => L_{n+1}");

        // descending: D_i = [x_i, p_n] along the orbit, then L_{n+1}
        const auto& orbit = data[n - 2].orbit;
        std::vector<RatInterval> desc;
        for (std::size_t i = 0; i + 1 < orbit.size(); ++i) {
            desc.emplace_back(orbit[i], p(n));
        }
        desc.push_back(ln1);

        // ascending: exact images of L_{n+1} until they cover L_n
        std::vector<RatInterval> asc{ln1};
        RatInterval img = ln1;
        std::size_t m = 0;
        constexpr std::size_t kChainMax = 64;
        while (!img.contains(ln)) {
            img = f.image(img);
            ++m;
            if (m > kChainMax) {
                throw LadderError("chain L_" + std::to_string(n + 1) + " -> L_" +
                                  std::to_string(n) + " exceeded " +
                                  std::to_string(kChainMax) + " steps");
            }
            if (!img.contains(ln)) {
                certify_inside(img, bound, "ascending chain");
                asc.push_back(img);
            }
        }
        asc.push_back(ln);

        Ladder::Chain chain;
        chain.n = n;
        chain.k = std::max(desc.size(), asc.size()) - 1;
        chain.up.assign(chain.k + 1 - desc.size(), ln);  // pad with self-cover
        chain.up.insert(chain.up.end(), desc.begin(), desc.end());
        chain.down.assign(chain.k + 1 - asc.size(), ln1);
        chain.down.insert(chain.down.end(), asc.begin(), asc.end());
        for (std::size_t i = 0; i + 1 < chain.up.size(); ++i) {
            certify(f, chain.up[i], chain.up[i + 1], "descending chain step");
            certify_inside(chain.up[i], bound, "descending chain");
        }
        for (std::size_t i = 0; i + 1 < chain.down.size(); ++i) {
            certify(f, chain.down[i], chain.down[i + 1], "ascending chain step");
            certify_inside(chain.down[i], bound, "ascending chain");
        }
        lad.chains.push_back(std::move(chain));
    }

    // any two disjoint closed intervals in (0,1) work; place them inside the
    // upper half where the sweep lives
    lad.h0 = RatInterval(Rat(21, 32), Rat(11, 16));
    lad.h1 = RatInterval(Rat(23, 32), Rat(3, 4));
    lad.k1 = find_k1(f, lad.level(2), lad.h0, lad.h1);
    return lad;
}

}  // namespace

Ladder build_ladder(const PLMap& f, std::size_t depth, LadderVariant variant,
                    std::vector<Rat> fixed_points) {
    if (depth < 2) {
        throw PreconditionError("ladder depth must be >= 2");
    }
    switch (variant) {
        case LadderVariant::NestedAtZero:
            return build_nested_ladder(f, depth);
        case LadderVariant::FixedPointHung:
            return build_fixed_point_ladder(f, depth, std::move(fixed_points));
    }
    throw DomainError("unknown ladder variant");
}

CodingSchedule coding_schedule(const PLMap& f, const Ladder& ladder, const Word& alpha) {
    if (*alpha.alphabet() != *Alphabet::binary()) {
        throw PreconditionError("coding word must be binary");
    }
    if (alpha.is_empty()) {
        throw PreconditionError("coding word must be nonempty");
    }
    std::size_t m = alpha.length();
    if (ladder.depth < m + 1) {
        throw PreconditionError("ladder depth " + std::to_string(ladder.depth) +
                                " too shallow for |alpha| = " + std::to_string(m) +
                                " (need depth >= |alpha|+1)");
    }

    CodingSchedule sched;
    sched.alpha = alpha;
    const RatInterval& l2 = ladder.level(2);

    auto h_of = [&](std::size_t i) -> const RatInterval& {
        return alpha.at(i) == '0' ? ladder.h0 : ladder.h1;
    };
    // expand K =f^{k1}=> L as K, f(K), ..., f^{k1-1}(K), L
    auto emit_leg = [&](const RatInterval& from, const RatInterval& to) {
        RatInterval img = from;
        for (std::size_t i = 1; i < ladder.k1; ++i) {
            img = f.image(img);
            sched.intervals.push_back(img);
        }
        sched.intervals.push_back(to);
    };

    sched.h_positions.push_back(0);
    sched.intervals.push_back(h_of(0));
    emit_leg(h_of(0), l2);
    for (std::size_t s = 0; s < m; ++s) {
        if (s > 0) {
            emit_leg(l2, h_of(s));
            sched.h_positions.push_back(sched.intervals.size() - 1);
            emit_leg(h_of(s), l2);
        }
        for (std::size_t j = 2; j <= s + 2; ++j) {
            const auto& chain = ladder.chain(j);
            sched.intervals.insert(sched.intervals.end(), chain.up.begin() + 1,
                                   chain.up.end());
        }
        for (std::size_t j = s + 2; j >= 2; --j) {
            const auto& chain = ladder.chain(j);
            sched.intervals.insert(sched.intervals.end(), chain.down.begin() + 1,
                                   chain.down.end());
        }
    }

    for (std::size_t i = 0; i + 1 < sched.intervals.size(); ++i) {
        if (!f.covers(sched.intervals[i], sched.intervals[i + 1])) {
            throw InternalInvariantError("schedule step " + std::to_string(i) +
                                         " lost its covering");
        }
    }
    return sched;
}

RatInterval trace_point(const PLMap& f, const std::vector<RatInterval>& schedule) {
    if (schedule.empty()) {
        throw PreconditionError("empty schedule");
    }
    RatInterval k = schedule.back();
    for (std::size_t i = schedule.size() - 1; i-- > 0;) {
        auto comps = f.preimage(k);
        // leftmost component that crosses all of k, so f(K_i) covers K_{i+1};
        // a certified covering J_i => J_{i+1} guarantees one exists
        std::optional<RatInterval> chosen;
        for (const auto& c : comps) {
            Rat lo = max(c.a, schedule[i].a);
            Rat hi = min(c.b, schedule[i].b);
            if (lo <= hi && f.image(RatInterval(lo, hi)).contains(k)) {
                chosen = RatInterval(lo, hi);
                break;
            }
        }
        if (!chosen) {
            throw InternalInvariantError("no covering refinement component at schedule index " +
                                         std::to_string(i));
        }
        k = *chosen;
    }
    return k;
}

TraceReport verify_trace(const PLMap& f, const Rat& b,
                         const std::vector<RatInterval>& schedule,
                         std::size_t max_threshold) {
    TraceReport rep;
    rep.orbit.reserve(schedule.size());
    Rat x = b;
    rep.itinerary_ok = true;
    for (std::size_t j = 0; j < schedule.size(); ++j) {
        if (j > 0) x = f.eval(x);
        rep.orbit.push_back(x);
        if (!schedule[j].contains(x)) {
            rep.itinerary_ok = false;
            throw ConstructionInvariantError("itinerary mismatch at step " + std::to_string(j) +
                                             ": " + x.str() + " not in " + schedule[j].str());
        }
    }
    rep.checked_steps = schedule.size();

    std::size_t horizon = schedule.size() - 1;
    for (std::size_t n = 2; n <= max_threshold; ++n) {
        Rat thr(1, static_cast<long long>(n));
        std::vector<std::size_t> visits;
        for (std::size_t j = 0; j < rep.orbit.size(); ++j) {
            if (rep.orbit[j] < thr) visits.push_back(j);
        }
        TraceReport::ThresholdGaps tg{n, WindowSet(std::move(visits), horizon), {}, 0};
        tg.profile = gap_profile(tg.visits);
        std::size_t run = 0;
        for (const auto& iv : schedule) {
            if (iv.b < thr) {
                run = 0;
            } else {
                ++run;
                tg.schedule_excursion = std::max(tg.schedule_excursion, run);
            }
        }
        rep.thresholds.push_back(std::move(tg));
    }
    return rep;
}

}  // namespace symdyn
