#include "symdyn/relations.hpp"

#include <algorithm>
#include <cmath>

namespace symdyn {

namespace {

// agreement[i] = length of the longest common block of x and y starting at i,
// clipped at the end of the inspected range.
std::vector<std::size_t> agreement_lengths(const std::string& xs, const std::string& ys) {
    std::size_t n = xs.size();
    std::vector<std::size_t> a(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        a[i] = xs[i] == ys[i] ? a[i + 1] + 1 : 0;
    }
    return a;
}

}  // namespace

const PairLevel& PairVerdict::at_level(std::size_t m) const {
    for (const auto& l : levels) {
        if (l.level == m) return l;
    }
    throw DomainError("verdict has no level " + std::to_string(m));
}

double PairVerdict::liminf_estimate() const {
    return liminf_hit_cap ? 0.0 : std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(
                                                       liminf_exponent, 1074)));
}

double PairVerdict::limsup_estimate() const {
    return limsup_hit_cap ? 0.0 : std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(
                                                       limsup_exponent, 1074)));
}

PairVerdict pair_profile(const SymbolStream& x, const SymbolStream& y, std::size_t horizon,
                         const std::vector<std::size_t>& levels) {
    if (horizon < 1) {
        throw PreconditionError("pair_profile requires horizon >= 1");
    }
    if (levels.empty()) {
        throw PreconditionError("pair_profile requires a nonempty level ladder");
    }
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        if (levels[i] >= levels[i + 1]) {
            throw PreconditionError("level ladder must be strictly increasing "
                                    "(thresholds 2^{-m} strictly decreasing)");
        }
    }
    if (!same_alphabet(x.alphabet(), y.alphabet())) {
        throw AlphabetMismatchError("pair_profile over mixed alphabets");
    }

    std::size_t lookahead = levels.back();
    std::size_t len = horizon + lookahead + 1;
    const std::string xs = x.prefix(len).str();
    const std::string ys = y.prefix(len).str();
    auto agree = agreement_lengths(xs, ys);

    PairVerdict v;
    v.horizon = horizon;
    v.lookahead = lookahead;

    for (std::size_t n = 0; n <= horizon; ++n) {
        if (xs[n] != ys[n]) {
            v.last_difference_index = n;
        }
    }

    v.sprox_evidence = true;
    for (std::size_t m : levels) {
        std::vector<std::size_t> close;
        for (std::size_t n = 0; n <= horizon; ++n) {
            if (agree[n] >= m) close.push_back(n);
        }
        PairLevel lv{m, WindowSet(std::move(close), horizon), {}, {}, false, 0};
        lv.close_profile = gap_profile(lv.close);
        lv.far_profile = gap_profile(lv.close.complement());
        ClassifyVerdict cls = classify_window(lv.close);
        lv.close_syndetic_evidence = cls.syndetic_evidence;
        lv.close_tail_gap = cls.tail_max_gap;
        v.sprox_evidence = v.sprox_evidence && lv.close_syndetic_evidence;
        v.levels.push_back(std::move(lv));
    }

    std::size_t tail_begin = horizon / 2;
    std::size_t best = 0;           // deepest agreement in the tail
    bool best_capped = false;       // ... and it ran off the inspected range
    std::size_t worst = len;        // shallowest agreement in the tail
    bool worst_capped = true;       // every shallowest witness ran off the range
    for (std::size_t n = tail_begin; n <= horizon; ++n) {
        std::size_t a = agree[n];
        bool capped = n + a >= len;
        if (a > best) {
            best = a;
            best_capped = capped;
        } else if (a == best && capped) {
            best_capped = true;
        }
        if (a < worst) {
            worst = a;
            worst_capped = capped;
        } else if (a == worst && !capped) {
            worst_capped = false;
        }
    }
    v.liminf_exponent = best;
    v.liminf_hit_cap = best_capped;
    v.limsup_exponent = worst;
    v.limsup_hit_cap = worst_capped;
    return v;
}

DensityProfile dc1_profile(const SymbolStream& x, const SymbolStream& y, std::size_t horizon,
                           double threshold, double tail_fraction) {
    if (!(threshold > 0.0) || threshold > 1.0) {
        throw PreconditionError("dc1 threshold must be in (0, 1]");
    }
    if (horizon < 1) {
        throw PreconditionError("dc1_profile requires horizon >= 1");
    }
    if (tail_fraction < 0.0 || tail_fraction >= 1.0) {
        throw PreconditionError("tail fraction must be in [0, 1)");
    }

    DensityProfile prof;
    prof.threshold = threshold;
    prof.horizon = horizon;
    std::size_t e = 0;
    while (std::ldexp(1.0, -static_cast<int>(e)) >= threshold) {
        ++e;
        if (e > 1074) break;
    }
    prof.exponent = e;

    std::size_t len = horizon + e + 1;
    const std::string xs = x.prefix(len).str();
    const std::string ys = y.prefix(len).str();
    auto agree = agreement_lengths(xs, ys);

    prof.tail_begin = std::max<std::size_t>(1, static_cast<std::size_t>(
                                                   std::ceil(tail_fraction * horizon)));
    prof.ratios.reserve(horizon);
    std::size_t count = 0;
    prof.phi_est = 1.0;
    prof.phi_star_est = 0.0;
    for (std::size_t n = 1; n <= horizon; ++n) {
        if (agree[n] >= e) ++count;
        double r = static_cast<double>(count) / static_cast<double>(n);
        prof.ratios.push_back(r);
        if (n >= prof.tail_begin) {
            prof.phi_est = std::min(prof.phi_est, r);
            prof.phi_star_est = std::max(prof.phi_star_est, r);
        }
    }
    prof.close_count = count;
    return prof;
}

SproxDensityCheck sprox_density_bound_check(const PairVerdict& verdict,
                                            const DensityProfile& profile) {
    const PairLevel* level = nullptr;
    for (const auto& l : verdict.levels) {
        if (l.level == profile.exponent) {
            level = &l;
        }
    }
    if (!level) {
        throw DomainError("verdict carries no level matching the profile threshold "
                          "(need level " + std::to_string(profile.exponent) + ")");
    }
    SproxDensityCheck out;
    out.phi_est = profile.phi_est;
    if (!level->close_syndetic_evidence) {
        out.verdict = BoundCheck::Skipped;  // no finite gap bound to feed the remark
        return out;
    }
    std::size_t gap = level->close_profile.max_gap;
    out.gap = gap;
    double slack = 2.0 * static_cast<double>(gap) / static_cast<double>(verdict.horizon);
    out.bound = 1.0 / (2.0 * static_cast<double>(gap)) - slack;
    out.verdict = profile.phi_est >= out.bound ? BoundCheck::Holds : BoundCheck::Fails;
    return out;
}

WindowSet hitting_times(const SymbolStream& x, const Word& w, std::size_t horizon) {
    if (!same_alphabet(x.alphabet(), w.alphabet())) {
        throw AlphabetMismatchError("hitting_times over mixed alphabets");
    }
    const std::string xs = x.prefix(horizon + w.length() + 1).str();
    std::vector<std::size_t> hits;
    for (std::size_t n = 0; n <= horizon; ++n) {
        if (xs.compare(n, w.length(), w.str()) == 0) {
            hits.push_back(n);
        }
    }
    return WindowSet(std::move(hits), horizon);
}

namespace {

class TranslateModRule final : public StreamRule {
  public:
    TranslateModRule(SymbolStream x, SymbolStream z) : x_(std::move(x)), z_(std::move(z)) {
        if (!same_alphabet(x_.alphabet(), z_.alphabet())) {
            throw AlphabetMismatchError("translate_mod over mixed alphabets");
        }
    }

    const AlphabetPtr& alphabet() const override { return x_.alphabet(); }

    Recipe recipe() const override {
        return {"translate-mod", {}, {x_.recipe(), z_.recipe()}};
    }

    void generate(std::size_t count, std::string& out) const override {
        const std::string xs = x_.prefix(count).str();
        const std::string zs = z_.prefix(count).str();
        const Alphabet& a = *alphabet();
        std::size_t m = a.size();
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(a.symbol((a.index_of(xs[i]) + a.index_of(zs[i])) % m));
        }
    }

  private:
    SymbolStream x_;
    SymbolStream z_;
};

}  // namespace

SymbolStream translate_mod(const SymbolStream& x, const SymbolStream& z) {
    return SymbolStream(std::make_shared<TranslateModRule>(x, z));
}

}  // namespace symdyn
