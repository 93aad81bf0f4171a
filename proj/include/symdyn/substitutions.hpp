#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "symdyn/streams.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

// Unordered pair of letters; equal letters mark a merged (coincident) node.
struct LetterPair {
    char a;
    char b;

    LetterPair(char x, char y) : a(x < y ? x : y), b(x < y ? y : x) {}
    bool merged() const { return a == b; }
    auto operator<=>(const LetterPair&) const = default;
    std::string str() const { return std::string{a, b}; }
};

class Substitution;

// Depth-t column where every letter's image carries the same symbol;
// re-checked on construction.
struct CoincidenceCertificate {
    unsigned t;
    std::size_t column;
    char letter;

    CoincidenceCertificate(const Substitution& tau, unsigned t, std::size_t column,
                           char letter);
};

struct ConstantLengthVerdict {
    bool constant = false;
    std::size_t length = 0;           // common image length when constant
    std::optional<std::pair<char, char>> witnesses;  // two letters with unequal image lengths
};

struct PrimitivityVerdict {
    bool primitive = false;
    unsigned power = 0;  // smallest n with all-positive incidence power, when primitive
};

enum class PairClass { Exclusive, Attractive, Neither };

struct PairInfo {
    LetterPair pair;
    PairClass cls;
    std::vector<LetterPair> reachable;          // nodes reachable in >= 1 steps
    std::optional<std::vector<LetterPair>> path_to_merge;      // when a merged node is reachable
    std::optional<std::vector<LetterPair>> path_to_exclusive;  // when an exclusive node is reachable
};

struct PairTable {
    std::vector<PairInfo> pairs;  // one entry per unordered pair of distinct letters

    const PairInfo& at(char a, char b) const;
};

struct ColumnNumberEstimate {
    std::size_t value = 0;   // min over k <= k_max of the smallest column letter count
    unsigned depth = 0;      // k achieving it
    bool certified = false;  // exact: value 1, or matched by a pairwise-exclusive letter set
    std::vector<char> exclusive_clique;  // letters pairwise exclusive, when used to certify
};

// Letter-to-word map; constant length is required by the column analyses but
// not by application or primitivity.
class Substitution {
  public:
    Substitution(AlphabetPtr alphabet, std::map<char, Word> images);

    // "a->aab; b->bad; c->ccd; d->dcb"
    static Substitution parse(const std::string& rules);

    static Substitution example_two_letter();   // 0 -> 001, 1 -> 100
    static Substitution example_four_letter();  // a->aab, b->bad, c->ccd, d->dcb

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const Word& image(char a) const;
    std::string rules_text() const;

    Word apply(const Word& w) const;
    Word apply_power(const Word& w, unsigned n,
                     std::size_t budget = kDefaultBudget) const;

    ConstantLengthVerdict constant_length() const;
    PrimitivityVerdict is_primitive(unsigned bound) const;
    std::optional<CoincidenceCertificate> coincidence_certificate(unsigned t_max) const;
    ColumnNumberEstimate column_number_estimate(unsigned k_max) const;
    PairTable pair_reachability() const;

    // Prefix of the one-sided fixed point at a letter a with tau(a) = a...
    Word fixed_point_prefix(char a, std::size_t length) const;
    SymbolStream fixed_point_stream(char a) const;

    static constexpr std::size_t kDefaultBudget = 1u << 24;

  private:
    AlphabetPtr alphabet_;
    std::vector<Word> images_;  // by letter index
};

}  // namespace symdyn
