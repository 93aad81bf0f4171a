#include "symdyn/words.hpp"

namespace symdyn {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
    if (symbols_.empty()) {
        throw DomainError("alphabet must contain at least one symbol");
    }
    index_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        auto c = static_cast<unsigned char>(symbols_[i]);
        if (index_[c] >= 0) {
            throw DomainError(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        }
        index_[c] = static_cast<std::int16_t>(i);
    }
}

AlphabetPtr Alphabet::binary() {
    static const auto instance = std::make_shared<const Alphabet>("01");
    return instance;
}

AlphabetPtr Alphabet::digits(std::size_t m) {
    if (m == 0 || m > 10) {
        throw DomainError("digit alphabet size must be in [1,10]");
    }
    return std::make_shared<const Alphabet>(std::string_view("0123456789").substr(0, m));
}

AlphabetPtr Alphabet::make(std::string_view symbols) {
    return std::make_shared<const Alphabet>(symbols);
}

std::size_t Alphabet::index_of(char c) const {
    auto i = index_[static_cast<unsigned char>(c)];
    if (i < 0) {
        throw DomainError(std::string("symbol '") + c + "' not in alphabet {" + symbols_ + "}");
    }
    return static_cast<std::size_t>(i);
}

Word::Word(AlphabetPtr alphabet, std::string symbols)
    : alphabet_(std::move(alphabet)), symbols_(std::move(symbols)) {
    if (!alphabet_) {
        throw DomainError("word requires an alphabet");
    }
    for (char c : symbols_) {
        if (!alphabet_->contains(c)) {
            throw DomainError(std::string("symbol '") + c + "' not in alphabet {" +
                              alphabet_->symbols() + "}");
        }
    }
}

Word Word::subword(std::size_t pos, std::size_t count) const {
    return Word(alphabet_, symbols_.substr(pos, count));
}

Word Word::repeated(std::size_t k) const {
    std::string out;
    out.reserve(symbols_.size() * k);
    for (std::size_t i = 0; i < k; ++i) {
        out += symbols_;
    }
    return Word(alphabet_, std::move(out));
}

Word concat(std::span<const Word> parts) {
    if (parts.empty()) {
        throw DomainError("concat of zero parts has no alphabet");
    }
    const AlphabetPtr& alpha = parts.front().alphabet();
    std::string out;
    for (const Word& p : parts) {
        if (!same_alphabet(p.alphabet(), alpha)) {
            throw AlphabetMismatchError("concat over mixed alphabets");
        }
        out += p.str();
    }
    return Word(alpha, std::move(out));
}

Word concat(std::initializer_list<Word> parts) {
    return concat(std::span<const Word>(parts.begin(), parts.size()));
}

std::size_t count_occurrences(const Word& w, char a) {
    w.alphabet()->index_of(a);  // domain check
    std::size_t n = 0;
    for (char c : w.str()) {
        n += (c == a);
    }
    return n;
}

std::set<char> letters_of(const Word& w) {
    return {w.str().begin(), w.str().end()};
}

}  // namespace symdyn
