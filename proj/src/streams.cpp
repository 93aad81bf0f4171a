#include "symdyn/streams.hpp"

#include <algorithm>
#include <cmath>

namespace symdyn {

Recipe SymbolStream::recipe() const {
    Recipe r = rule_->recipe();
    r.params.emplace_back("alphabet", alphabet()->symbols());
    return r;
}

Word SymbolStream::prefix(std::size_t n) const {
    std::string out;
    out.reserve(n);
    rule_->generate(n, out);
    if (out.size() != n) {
        throw InternalInvariantError("stream rule '" + rule_->recipe().name +
                                     "' produced a prefix of the wrong length");
    }
    return Word(alphabet(), std::move(out));
}

Word SymbolStream::factor(std::size_t i, std::size_t j) const {
    if (i > j) {
        return Word::empty(alphabet());
    }
    Word p = prefix(j + 1);
    return p.subword(i, j - i + 1);
}

namespace {

class ShiftRule final : public StreamRule {
  public:
    ShiftRule(SymbolStream inner, std::size_t offset)
        : inner_(std::move(inner)), offset_(offset) {}

    const AlphabetPtr& alphabet() const override { return inner_.alphabet(); }

    Recipe recipe() const override {
        return {"shift", {{"offset", std::to_string(offset_)}}, {inner_.recipe()}};
    }

    void generate(std::size_t count, std::string& out) const override {
        out.append(inner_.prefix(count + offset_).str(), offset_, count);
    }

  private:
    SymbolStream inner_;
    std::size_t offset_;
};

class ConstantRule final : public StreamRule {
  public:
    ConstantRule(AlphabetPtr alphabet, char symbol)
        : alphabet_(std::move(alphabet)), symbol_(symbol) {
        alphabet_->index_of(symbol_);
    }

    const AlphabetPtr& alphabet() const override { return alphabet_; }

    Recipe recipe() const override {
        return {"const", {{"symbol", std::string(1, symbol_)}}, {}};
    }

    void generate(std::size_t count, std::string& out) const override {
        out.append(count, symbol_);
    }

  private:
    AlphabetPtr alphabet_;
    char symbol_;
};

class EventuallyPeriodicRule final : public StreamRule {
  public:
    EventuallyPeriodicRule(Word head, Word tail) : head_(std::move(head)), tail_(std::move(tail)) {
        if (!same_alphabet(head_.alphabet(), tail_.alphabet())) {
            throw AlphabetMismatchError("head and tail over different alphabets");
        }
        if (tail_.is_empty()) {
            throw DomainError("periodic tail must be nonempty");
        }
    }

    const AlphabetPtr& alphabet() const override { return head_.alphabet(); }

    Recipe recipe() const override {
        return {"eventually-periodic", {{"head", head_.str()}, {"tail", tail_.str()}}, {}};
    }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t take = std::min(count, head_.length());
        out.append(head_.str(), 0, take);
        std::size_t left = count - take;
        while (left > 0) {
            std::size_t chunk = std::min(left, tail_.length());
            out.append(tail_.str(), 0, chunk);
            left -= chunk;
        }
    }

  private:
    Word head_;
    Word tail_;
};

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class RandomRule final : public StreamRule {
  public:
    RandomRule(AlphabetPtr alphabet, std::uint64_t seed)
        : alphabet_(std::move(alphabet)), seed_(seed) {}

    const AlphabetPtr& alphabet() const override { return alphabet_; }

    Recipe recipe() const override {
        return {"random", {{"seed", std::to_string(seed_)}}, {}};
    }

    void generate(std::size_t count, std::string& out) const override {
        for (std::size_t i = 0; i < count; ++i) {
            std::uint64_t h = splitmix64(seed_ ^ splitmix64(i));
            out.push_back(alphabet_->symbol(h % alphabet_->size()));
        }
    }

  private:
    AlphabetPtr alphabet_;
    std::uint64_t seed_;
};

class FlipRule final : public StreamRule {
  public:
    FlipRule(SymbolStream base, std::vector<std::size_t> positions)
        : base_(std::move(base)), positions_(std::move(positions)) {
        std::sort(positions_.begin(), positions_.end());
    }

    const AlphabetPtr& alphabet() const override { return base_.alphabet(); }

    Recipe recipe() const override {
        std::string pos;
        for (std::size_t p : positions_) {
            if (!pos.empty()) pos += ",";
            pos += std::to_string(p);
        }
        return {"flip", {{"positions", pos}}, {base_.recipe()}};
    }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t start = out.size();
        out += base_.prefix(count).str();
        const Alphabet& a = *alphabet();
        for (std::size_t p : positions_) {
            if (p >= count) break;
            char c = out[start + p];
            out[start + p] = a.symbol((a.index_of(c) + 1) % a.size());
        }
    }

  private:
    SymbolStream base_;
    std::vector<std::size_t> positions_;
};

}  // namespace

SymbolStream SymbolStream::shifted(std::size_t offset) const {
    if (offset == 0) {
        return *this;
    }
    return SymbolStream(std::make_shared<ShiftRule>(*this, offset));
}

SymbolStream SymbolStream::constant(AlphabetPtr alphabet, char symbol) {
    return SymbolStream(std::make_shared<ConstantRule>(std::move(alphabet), symbol));
}

SymbolStream SymbolStream::periodic(Word w) {
    AlphabetPtr alpha = w.alphabet();
    return eventually_periodic(Word::empty(std::move(alpha)), std::move(w));
}

SymbolStream SymbolStream::eventually_periodic(Word head, Word tail) {
    return SymbolStream(std::make_shared<EventuallyPeriodicRule>(std::move(head), std::move(tail)));
}

SymbolStream SymbolStream::random(AlphabetPtr alphabet, std::uint64_t seed) {
    return SymbolStream(std::make_shared<RandomRule>(std::move(alphabet), seed));
}

SymbolStream SymbolStream::with_flips(SymbolStream base, std::vector<std::size_t> positions) {
    return SymbolStream(std::make_shared<FlipRule>(std::move(base), std::move(positions)));
}

double StreamDistance::upper_bound() const {
    return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(exponent, 1074)));
}

StreamDistance stream_distance(const SymbolStream& x, const SymbolStream& y,
                               std::size_t precision) {
    if (precision < 1) {
        throw PreconditionError("stream_distance requires precision >= 1");
    }
    if (!same_alphabet(x.alphabet(), y.alphabet())) {
        throw AlphabetMismatchError("stream_distance over mixed alphabets");
    }
    const std::string xs = x.prefix(precision).str();
    const std::string ys = y.prefix(precision).str();
    for (std::size_t k = 0; k < precision; ++k) {
        if (xs[k] != ys[k]) {
            return {true, k};
        }
    }
    return {false, precision};
}

}  // namespace symdyn
