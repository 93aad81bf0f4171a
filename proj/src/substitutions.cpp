#include "symdyn/substitutions.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace symdyn {

Substitution::Substitution(AlphabetPtr alphabet, std::map<char, Word> images)
    : alphabet_(std::move(alphabet)) {
    images_.reserve(alphabet_->size());
    for (char a : alphabet_->symbols()) {
        auto it = images.find(a);
        if (it == images.end()) {
            throw DomainError(std::string("no image for letter '") + a + "'");
        }
        if (it->second.is_empty()) {
            throw DomainError(std::string("empty image for letter '") + a + "'");
        }
        if (!same_alphabet(it->second.alphabet(), alphabet_)) {
            throw AlphabetMismatchError("image over a different alphabet");
        }
        images_.push_back(it->second);
    }
    if (images.size() != alphabet_->size()) {
        throw DomainError("image map mentions letters outside the alphabet");
    }
}

Substitution Substitution::parse(const std::string& rules) {
    // collect letters first, in order of appearance on the left-hand sides
    std::string letters;
    std::vector<std::pair<char, std::string>> entries;
    std::stringstream ss(rules);
    std::string item;
    while (std::getline(ss, item, ';')) {
        std::string compact;
        for (char c : item) {
            if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
        }
        if (compact.empty()) continue;
        auto arrow = compact.find("->");
        if (arrow == std::string::npos || arrow != 1) {
            throw DomainError("cannot parse substitution rule '" + item + "'");
        }
        char lhs = compact[0];
        entries.emplace_back(lhs, compact.substr(arrow + 2));
        if (letters.find(lhs) == std::string::npos) letters += lhs;
    }
    if (entries.empty()) {
        throw DomainError("no substitution rules given");
    }
    auto alpha = Alphabet::make(letters);
    std::map<char, Word> images;
    for (auto& [lhs, rhs] : entries) {
        images.emplace(lhs, Word(alpha, rhs));
    }
    return Substitution(alpha, std::move(images));
}

Substitution Substitution::example_two_letter() {
    return parse("0->001; 1->100");
}

Substitution Substitution::example_four_letter() {
    return parse("a->aab; b->bad; c->ccd; d->dcb");
}

const Word& Substitution::image(char a) const {
    return images_[alphabet_->index_of(a)];
}

std::string Substitution::rules_text() const {
    std::string out;
    for (char a : alphabet_->symbols()) {
        if (!out.empty()) out += "; ";
        out += a;
        out += "->";
        out += image(a).str();
    }
    return out;
}

Word Substitution::apply(const Word& w) const {
    std::string out;
    for (char c : w.str()) {
        out += image(c).str();
    }
    return Word(alphabet_, std::move(out));
}

Word Substitution::apply_power(const Word& w, unsigned n, std::size_t budget) const {
    Word cur = w;
    for (unsigned i = 0; i < n; ++i) {
        std::size_t next_len = 0;
        for (char c : cur.str()) {
            next_len += image(c).length();
            if (next_len > budget) {
                throw BudgetError("substitution power exceeds size budget of " +
                                  std::to_string(budget) + " symbols");
            }
        }
        cur = apply(cur);
    }
    return cur;
}

ConstantLengthVerdict Substitution::constant_length() const {
    std::size_t p = images_.front().length();
    for (std::size_t i = 1; i < images_.size(); ++i) {
        if (images_[i].length() != p) {
            return {false, 0,
                    std::make_pair(alphabet_->symbol(0), alphabet_->symbol(i))};
        }
    }
    return {true, p, std::nullopt};
}

PrimitivityVerdict Substitution::is_primitive(unsigned bound) const {
    std::size_t n = alphabet_->size();
    // boolean incidence matrix: occurs[a][b] = b appears in tau(a)
    std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (char c : images_[a].str()) {
            m[a][alphabet_->index_of(c)] = true;
        }
    }
    auto all_positive = [n](const std::vector<std::vector<bool>>& x) {
        for (const auto& row : x) {
            for (bool v : row) {
                if (!v) return false;
            }
        }
        (void)n;
        return true;
    };
    std::vector<std::vector<bool>> power = m;
    for (unsigned k = 1; k <= bound; ++k) {
        if (all_positive(power)) {
            return {true, k};
        }
        std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!power[i][j]) continue;
                for (std::size_t k2 = 0; k2 < n; ++k2) {
                    if (m[j][k2]) next[i][k2] = true;
                }
            }
        }
        power = std::move(next);
    }
    return {false, 0};
}

CoincidenceCertificate::CoincidenceCertificate(const Substitution& tau, unsigned t_,
                                               std::size_t column_, char letter_)
    : t(t_), column(column_), letter(letter_) {
    for (char a : tau.alphabet()->symbols()) {
        Word img = tau.apply_power(Word(tau.alphabet(), std::string(1, a)), t);
        if (column >= img.length() || img.at(column) != letter) {
            throw ConstructionInvariantError(
                "coincidence certificate does not hold: tau^" + std::to_string(t) + "(" + a +
                ")[" + std::to_string(column) + "] != " + letter);
        }
    }
}

std::optional<CoincidenceCertificate> Substitution::coincidence_certificate(
    unsigned t_max) const {
    auto cl = constant_length();
    if (!cl.constant) {
        throw PreconditionError("coincidence search needs a constant-length substitution");
    }
    std::vector<Word> powers;
    for (char a : alphabet_->symbols()) {
        powers.push_back(Word(alphabet_, std::string(1, a)));
    }
    for (unsigned t = 1; t <= t_max; ++t) {
        if (powers.front().length() * cl.length * alphabet_->size() > kDefaultBudget) {
            throw BudgetError("coincidence search at depth " + std::to_string(t) +
                              " exceeds the size budget");
        }
        for (auto& w : powers) {
            w = apply(w);
        }
        std::size_t cols = powers.front().length();
        for (std::size_t i = 0; i < cols; ++i) {
            char e = powers.front().at(i);
            bool same = true;
            for (const auto& w : powers) {
                if (w.at(i) != e) {
                    same = false;
                    break;
                }
            }
            if (same) {
                return CoincidenceCertificate(*this, t, i, e);
            }
        }
    }
    return std::nullopt;
}

PairTable Substitution::pair_reachability() const {
    auto cl = constant_length();
    if (!cl.constant) {
        throw PreconditionError("pair reachability needs a constant-length substitution");
    }
    std::size_t p = cl.length;

    auto successors = [&](const LetterPair& q) {
        std::vector<LetterPair> out;
        const Word& wa = image(q.a);
        const Word& wb = image(q.b);
        for (std::size_t i = 0; i < p; ++i) {
            out.emplace_back(wa.at(i), wb.at(i));
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };

    // reachable sets (in >= 1 steps) for every node, merged nodes included
    std::vector<LetterPair> nodes;
    for (char a : alphabet_->symbols()) {
        for (char b : alphabet_->symbols()) {
            if (a <= b) nodes.emplace_back(a, b);
        }
    }
    std::map<LetterPair, std::set<LetterPair>> reach;
    for (const auto& node : nodes) {
        std::set<LetterPair>& r = reach[node];
        std::deque<LetterPair> q;
        for (const auto& s : successors(node)) {
            if (r.insert(s).second) q.push_back(s);
        }
        while (!q.empty()) {
            LetterPair cur = q.front();
            q.pop_front();
            for (const auto& s : successors(cur)) {
                if (r.insert(s).second) q.push_back(s);
            }
        }
    }

    auto exclusive = [&](const LetterPair& q) {
        if (q.merged()) return false;
        for (const auto& r : reach[q]) {
            if (r.merged()) return false;
        }
        return true;
    };

    auto find_path = [&](const LetterPair& from, auto&& target) {
        std::map<LetterPair, LetterPair> parent;
        std::deque<LetterPair> q;
        for (const auto& s : successors(from)) {
            if (!parent.count(s)) {
                parent.emplace(s, from);
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            LetterPair cur = q.front();
            q.pop_front();
            if (target(cur)) {
                std::vector<LetterPair> path{cur};
                while (!(path.back() == from)) {
                    path.push_back(parent.at(path.back()));
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            for (const auto& s : successors(cur)) {
                if (!parent.count(s)) {
                    parent.emplace(s, cur);
                    q.push_back(s);
                }
            }
        }
        return std::vector<LetterPair>{};
    };

    PairTable table;
    for (const auto& node : nodes) {
        if (node.merged()) continue;
        PairInfo info{node, PairClass::Neither, {}, std::nullopt, std::nullopt};
        info.reachable.assign(reach[node].begin(), reach[node].end());
        bool reaches_merge = false;
        bool reaches_exclusive = false;
        for (const auto& r : reach[node]) {
            if (r.merged()) reaches_merge = true;
            if (exclusive(r)) reaches_exclusive = true;
        }
        if (!reaches_merge) {
            info.cls = PairClass::Exclusive;
        } else if (!reaches_exclusive) {
            info.cls = PairClass::Attractive;
        }
        if (reaches_merge) {
            info.path_to_merge = find_path(node, [](const LetterPair& q) { return q.merged(); });
        }
        if (reaches_exclusive) {
            info.path_to_exclusive =
                find_path(node, [&](const LetterPair& q) { return exclusive(q); });
        }
        table.pairs.push_back(std::move(info));
    }
    return table;
}

const PairInfo& PairTable::at(char a, char b) const {
    LetterPair key(a, b);
    for (const auto& info : pairs) {
        if (info.pair == key) return info;
    }
    throw DomainError("pair not in table: " + key.str());
}

ColumnNumberEstimate Substitution::column_number_estimate(unsigned k_max) const {
    auto cl = constant_length();
    if (!cl.constant) {
        throw PreconditionError("column number needs a constant-length substitution");
    }
    ColumnNumberEstimate est;
    est.value = alphabet_->size();
    est.depth = 0;
    std::vector<Word> powers;
    for (char a : alphabet_->symbols()) {
        powers.push_back(Word(alphabet_, std::string(1, a)));
    }
    for (unsigned k = 1; k <= k_max; ++k) {
        if (powers.front().length() * cl.length * alphabet_->size() > kDefaultBudget) {
            throw BudgetError("column scan at depth " + std::to_string(k) +
                              " exceeds the size budget");
        }
        for (auto& w : powers) {
            w = apply(w);
        }
        std::size_t cols = powers.front().length();
        for (std::size_t i = 0; i < cols; ++i) {
            std::set<char> col;
            for (const auto& w : powers) {
                col.insert(w.at(i));
            }
            if (col.size() < est.value) {
                est.value = col.size();
                est.depth = k;
            }
        }
        if (est.value == 1) break;
    }
    if (est.value == 1) {
        est.certified = true;
        return est;
    }
    // lower-bound certificate: a set of letters that never merge pairwise
    // keeps its size in every column, so C(tau) >= clique size
    PairTable table = pair_reachability();
    auto is_exclusive = [&](char a, char b) {
        return table.at(a, b).cls == PairClass::Exclusive;
    };
    std::vector<char> letters(alphabet_->symbols().begin(), alphabet_->symbols().end());
    std::vector<char> best;
    std::size_t n = letters.size();
    if (n > 16) {
        return est;  // clique certificate search capped; estimate stays an upper bound
    }
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<char> subset;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) subset.push_back(letters[i]);
        }
        bool clique = true;
        for (std::size_t i = 0; i < subset.size() && clique; ++i) {
            for (std::size_t j = i + 1; j < subset.size() && clique; ++j) {
                clique = is_exclusive(subset[i], subset[j]);
            }
        }
        if (clique && subset.size() > best.size()) {
            best = subset;
        }
    }
    est.exclusive_clique = best;
    est.certified = best.size() == est.value;
    return est;
}

Word Substitution::fixed_point_prefix(char a, std::size_t length) const {
    if (length < 1) {
        throw PreconditionError("fixed point prefix length must be >= 1");
    }
    const Word& img = image(a);
    if (img.at(0) != a) {
        throw DomainError(std::string("tau(") + a + ") does not begin with " + a +
                          "; no one-sided fixed point there");
    }
    Word cur(alphabet_, std::string(1, a));
    while (cur.length() < length) {
        Word next = apply(cur);
        if (next.length() == cur.length()) {
            throw DomainError(std::string("tau does not grow at '") + a +
                              "'; fixed point is the finite word " + cur.str());
        }
        cur = next;
    }
    return cur.subword(0, length);
}

namespace {

class FixedPointRule final : public StreamRule {
  public:
    FixedPointRule(Substitution tau, char a) : tau_(std::move(tau)), a_(a) {
        tau_.fixed_point_prefix(a, 1);  // validates tau(a) = a...
    }

    const AlphabetPtr& alphabet() const override { return tau_.alphabet(); }

    Recipe recipe() const override {
        return {"subst-fixed-point",
                {{"rules", tau_.rules_text()}, {"letter", std::string(1, a_)}},
                {}};
    }

    void generate(std::size_t count, std::string& out) const override {
        if (count == 0) return;
        out += tau_.fixed_point_prefix(a_, count).str();
    }

  private:
    Substitution tau_;
    char a_;
};

}  // namespace

SymbolStream Substitution::fixed_point_stream(char a) const {
    return SymbolStream(std::make_shared<FixedPointRule>(*this, a));
}

}  // namespace symdyn
