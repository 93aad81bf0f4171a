#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symdyn/errors.hpp"

namespace symdyn {

// Ordered finite set of distinct symbols, size >= 1. Symbols are single
// characters; that covers every system in scope.
class Alphabet {
  public:
    explicit Alphabet(std::string_view symbols);

    static std::shared_ptr<const Alphabet> binary();           // {0,1}
    static std::shared_ptr<const Alphabet> digits(std::size_t m);  // {0..m-1}, m <= 10
    static std::shared_ptr<const Alphabet> make(std::string_view symbols);

    std::size_t size() const { return symbols_.size(); }
    char symbol(std::size_t i) const { return symbols_.at(i); }
    bool contains(char c) const { return index_[static_cast<unsigned char>(c)] >= 0; }
    std::size_t index_of(char c) const;

    const std::string& symbols() const { return symbols_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols_ == b.symbols_;
    }

  private:
    std::string symbols_;
    std::array<std::int16_t, 256> index_{};
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

inline bool same_alphabet(const AlphabetPtr& a, const AlphabetPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Finite word over an alphabet; the empty word is allowed.
class Word {
  public:
    Word() = default;
    Word(AlphabetPtr alphabet, std::string symbols);

    static Word empty(AlphabetPtr alphabet) { return Word(std::move(alphabet), ""); }

    const AlphabetPtr& alphabet() const { return alphabet_; }
    const std::string& str() const { return symbols_; }
    std::size_t length() const { return symbols_.size(); }
    bool is_empty() const { return symbols_.empty(); }
    char at(std::size_t i) const { return symbols_.at(i); }

    Word subword(std::size_t pos, std::size_t count) const;
    Word repeated(std::size_t k) const;  // w^k

    friend bool operator==(const Word& a, const Word& b) {
        return a.symbols_ == b.symbols_ && same_alphabet(a.alphabet_, b.alphabet_);
    }
    friend bool operator<(const Word& a, const Word& b) {  // by string only
        return a.symbols_ < b.symbols_;
    }

  private:
    AlphabetPtr alphabet_;
    std::string symbols_;
};

Word concat(std::span<const Word> parts);
Word concat(std::initializer_list<Word> parts);

std::size_t count_occurrences(const Word& w, char a);

std::set<char> letters_of(const Word& w);

}  // namespace symdyn
