#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/words.hpp"

namespace symdyn {

// Serializable description of how a stream is generated: rule name,
// parameters, and the recipes of any input streams.
struct Recipe {
    std::string name;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Recipe> children;
};

// A deterministic generator rule for a one-sided infinite sequence.
// generate() must be a pure function of (rule, count): requesting the same
// prefix twice yields identical symbols, which is what lets every
// verification state the horizon it consumed and be replayed bit-identically.
class StreamRule {
  public:
    virtual ~StreamRule() = default;
    virtual const AlphabetPtr& alphabet() const = 0;
    virtual Recipe recipe() const = 0;
    // Appends exactly `count` symbols (indices 0..count-1) to `out`.
    virtual void generate(std::size_t count, std::string& out) const = 0;
};

// Lazily evaluable one-sided infinite symbol sequence. Immutable; prefixes
// are recomputed per call rather than cached, so shared concurrent use is
// safe by construction.
class SymbolStream {
  public:
    explicit SymbolStream(std::shared_ptr<const StreamRule> rule) : rule_(std::move(rule)) {}

    const AlphabetPtr& alphabet() const { return rule_->alphabet(); }
    // rule recipe annotated with the alphabet, per the stream record format
    Recipe recipe() const;

    Word prefix(std::size_t n) const;

    // x_{[i,j]} inclusive; i > j yields the empty word.
    Word factor(std::size_t i, std::size_t j) const;

    SymbolStream shifted(std::size_t offset) const;  // sigma^offset

    // --- constructors for the basic rules ---
    static SymbolStream constant(AlphabetPtr alphabet, char symbol);
    static SymbolStream periodic(Word w);
    // `head` then `tail` repeated forever.
    static SymbolStream eventually_periodic(Word head, Word tail);
    // Index-addressable pseudo-random symbols from a fixed seed (splitmix64).
    static SymbolStream random(AlphabetPtr alphabet, std::uint64_t seed);
    // Same as `base`, with the symbols at `positions` replaced by `replacement`.
    static SymbolStream with_flips(SymbolStream base, std::vector<std::size_t> positions);

  private:
    std::shared_ptr<const StreamRule> rule_;
};

// Exact dyadic distance d(x,y) = 2^{-exponent}. When the compared range shows
// no difference the value is unresolved and `exponent` is the precision, so
// 2^{-exponent} is an upper bound for the true distance.
struct StreamDistance {
    bool resolved = false;
    std::size_t exponent = 0;

    double upper_bound() const;
};

StreamDistance stream_distance(const SymbolStream& x, const SymbolStream& y,
                               std::size_t precision);

}  // namespace symdyn
