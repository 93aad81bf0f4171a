#include "symdyn/subshifts.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace symdyn {

VertexShift VertexShift::from_edges(const AlphabetPtr& vertices,
                                    const std::vector<std::pair<char, char>>& edges) {
    std::size_t n = vertices->size();
    std::vector<std::set<std::size_t>> out(n);
    for (auto [a, b] : edges) {
        out[vertices->index_of(a)].insert(vertices->index_of(b));
    }

    // prune vertices not on a bi-infinite path
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::size_t> outdeg(n, 0);
        std::vector<std::size_t> indeg(n, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            for (std::size_t w : out[v]) {
                if (alive[w]) {
                    ++outdeg[v];
                    ++indeg[w];
                }
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (alive[v] && (outdeg[v] == 0 || indeg[v] == 0)) {
                alive[v] = false;
                changed = true;
            }
        }
    }

    std::string kept;
    for (std::size_t v = 0; v < n; ++v) {
        if (alive[v]) kept += vertices->symbol(v);
    }
    if (kept.empty()) {
        throw EmptyShiftError("pruning left no vertices");
    }

    VertexShift g;
    g.vertices_ = Alphabet::make(kept);
    g.out_.resize(kept.size());
    g.in_.resize(kept.size());
    for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::size_t sv = g.vertices_->index_of(vertices->symbol(v));
        for (std::size_t w : out[v]) {
            if (!alive[w]) continue;
            std::size_t sw = g.vertices_->index_of(vertices->symbol(w));
            g.out_[sv].push_back(sw);
            g.in_[sw].push_back(sv);
        }
    }
    for (auto& v : g.out_) std::sort(v.begin(), v.end());
    for (auto& v : g.in_) std::sort(v.begin(), v.end());
    return g;
}

VertexShift VertexShift::full_shift(AlphabetPtr alphabet) {
    std::vector<std::pair<char, char>> edges;
    for (char a : alphabet->symbols()) {
        for (char b : alphabet->symbols()) {
            edges.emplace_back(a, b);
        }
    }
    return from_edges(alphabet, edges);
}

bool VertexShift::has_edge(char from, char to) const {
    if (!vertices_->contains(from) || !vertices_->contains(to)) {
        return false;
    }
    const auto& o = out_[vertices_->index_of(from)];
    return std::binary_search(o.begin(), o.end(), vertices_->index_of(to));
}

std::vector<std::pair<char, char>> VertexShift::edges() const {
    std::vector<std::pair<char, char>> es;
    for (std::size_t v = 0; v < out_.size(); ++v) {
        for (std::size_t w : out_[v]) {
            es.emplace_back(vertices_->symbol(v), vertices_->symbol(w));
        }
    }
    return es;
}

bool VertexShift::language_contains(const Word& w) const {
    for (char c : w.str()) {
        if (!vertices_->contains(c)) return false;
    }
    for (std::size_t i = 0; i + 1 < w.length(); ++i) {
        if (!has_edge(w.at(i), w.at(i + 1))) return false;
    }
    return true;
}

SFTSpec parse_sft_spec(const std::string& alphabet, const std::string& forbidden_csv) {
    SFTSpec spec;
    spec.alphabet = Alphabet::make(alphabet);
    std::stringstream ss(forbidden_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            spec.forbidden.emplace_back(spec.alphabet, item);
        }
    }
    return spec;
}

namespace {

bool contains_forbidden(const std::string& text, const std::vector<std::string>& forbidden) {
    for (const auto& f : forbidden) {
        if (!f.empty() && text.find(f) != std::string::npos) return true;
    }
    return false;
}

// fresh vertex names for block presentations; alphanumerics first
std::string symbol_pool() {
    std::string pool =
        "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
    for (char c = '!'; c <= '~'; ++c) {
        if (pool.find(c) == std::string::npos) pool += c;
    }
    return pool;
}

}  // namespace

SftPresentation forbidden_to_vertex(const SFTSpec& spec) {
    // drop letters forbidden as length-1 words
    std::string letters;
    std::vector<std::string> forbidden;
    {
        std::set<char> banned;
        for (const Word& f : spec.forbidden) {
            if (f.length() == 1) banned.insert(f.at(0));
        }
        for (char c : spec.alphabet->symbols()) {
            if (!banned.count(c)) letters += c;
        }
        for (const Word& f : spec.forbidden) {
            if (f.length() >= 2) forbidden.push_back(f.str());
        }
    }
    if (letters.empty()) {
        throw EmptyShiftError("every letter is forbidden");
    }

    std::size_t m = 2;
    for (const auto& f : forbidden) {
        m = std::max(m, f.size());
    }
    std::size_t block = m - 1;

    // allowed (m-1)-blocks
    std::vector<std::string> blocks;
    {
        std::vector<std::string> frontier{""};
        for (std::size_t i = 0; i < block; ++i) {
            std::vector<std::string> next;
            for (const auto& b : frontier) {
                for (char c : letters) {
                    std::string cand = b + c;
                    if (!contains_forbidden(cand, forbidden)) next.push_back(cand);
                }
            }
            frontier = std::move(next);
        }
        blocks = std::move(frontier);
    }
    if (blocks.empty()) {
        throw EmptyShiftError("no allowed blocks");
    }

    std::string names;
    std::vector<std::string> block_of;
    if (block == 1) {
        for (const auto& b : blocks) names += b[0];
        block_of = blocks;
    } else {
        std::string pool = symbol_pool();
        if (blocks.size() > pool.size()) {
            throw DomainError("block presentation needs more vertex names than available");
        }
        for (std::size_t i = 0; i < blocks.size(); ++i) names += pool[i];
        block_of = blocks;
    }

    auto vertex_alpha = Alphabet::make(names);
    std::map<std::string, char> name_of;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        name_of[blocks[i]] = names[i];
    }

    std::vector<std::pair<char, char>> edges;
    for (const auto& u : blocks) {
        for (char c : letters) {
            std::string ext = u + c;  // length m
            if (contains_forbidden(ext, forbidden)) continue;
            std::string v = ext.substr(1);
            auto it = name_of.find(v);
            if (it != name_of.end()) {
                edges.emplace_back(name_of[u], it->second);
            }
        }
    }

    // throws EmptyShiftError when pruning wipes the graph
    SftPresentation pres{VertexShift::from_edges(vertex_alpha, edges), {}, block};
    // keep only surviving vertices' blocks, in the pruned graph's order
    for (char v : pres.graph.vertices()->symbols()) {
        pres.vertex_blocks.push_back(block_of[vertex_alpha->index_of(v)]);
    }
    return pres;
}

Word SftPresentation::encode_blocks(const Word& w) const {
    if (w.length() < block_length) {
        throw DomainError("word shorter than one block");
    }
    std::map<std::string, char> name_of;
    for (std::size_t i = 0; i < vertex_blocks.size(); ++i) {
        name_of[vertex_blocks[i]] = graph.vertices()->symbol(i);
    }
    std::string out;
    for (std::size_t i = 0; i + block_length <= w.length(); ++i) {
        auto it = name_of.find(w.str().substr(i, block_length));
        if (it == name_of.end()) {
            throw DomainError("word contains a disallowed block");
        }
        out += it->second;
    }
    return Word(graph.vertices(), std::move(out));
}

bool sft_scan_admissible(const SFTSpec& spec, const Word& w) {
    std::vector<std::string> forbidden;
    for (const Word& f : spec.forbidden) {
        forbidden.push_back(f.str());
    }
    if (contains_forbidden(w.str(), forbidden)) {
        return false;
    }
    // extendability: some extension of length |A| on each side avoids F;
    // |A| extra steps force a cycle, hence a bi-infinite continuation
    std::size_t ext = spec.alphabet->size();
    std::vector<std::string> lefts{""};
    for (std::size_t i = 0; i < ext; ++i) {
        std::vector<std::string> next;
        for (const auto& u : lefts) {
            for (char c : spec.alphabet->symbols()) {
                std::string cand = c + u;
                if (!contains_forbidden(cand + w.str(), forbidden)) next.push_back(cand);
            }
        }
        lefts = std::move(next);
        if (lefts.empty()) return false;
    }
    for (const auto& u : lefts) {
        std::vector<std::string> rights{""};
        bool ok = true;
        for (std::size_t i = 0; i < ext && ok; ++i) {
            std::vector<std::string> next;
            for (const auto& v : rights) {
                for (char c : spec.alphabet->symbols()) {
                    std::string cand = v + c;
                    if (!contains_forbidden(u + w.str() + cand, forbidden)) next.push_back(cand);
                }
            }
            rights = std::move(next);
            ok = !rights.empty();
        }
        if (ok) return true;
    }
    return false;
}

namespace {

std::vector<std::vector<bool>> reachability(const VertexShift& g) {
    std::size_t n = g.vertex_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::deque<std::size_t> q{s};
        std::vector<bool> seen(n, false);
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop_front();
            for (std::size_t w : g.out(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        reach[s] = seen;  // reachable in >= 1 steps
    }
    return reach;
}

}  // namespace

TransitivityVerdict is_transitive(const VertexShift& g) {
    auto reach = reachability(g);
    std::size_t n = g.vertex_count();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!reach[a][b]) {
                return {false,
                        std::make_pair(g.vertices()->symbol(a), g.vertices()->symbol(b))};
            }
        }
    }
    return {true, std::nullopt};
}

PeriodVerdict graph_period(const VertexShift& g) {
    if (!is_transitive(g).transitive) {
        throw PreconditionError("graph_period requires a strongly connected graph");
    }
    std::size_t n = g.vertex_count();
    std::vector<long long> level(n, -1);
    std::deque<std::size_t> q{0};
    level[0] = 0;
    long long period = 0;
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        for (std::size_t w : g.out(v)) {
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                q.push_back(w);
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w : g.out(v)) {
            period = std::gcd(period, level[v] + 1 - level[w]);
        }
    }
    period = period < 0 ? -period : period;
    return {static_cast<std::size_t>(period), period == 1};
}

bool SpacingSet::contains(std::size_t d) const {
    if (d <= window.horizon()) {
        return window.contains(d);
    }
    if (!beyond) {
        throw DomainError("spacing distance " + std::to_string(d) +
                          " beyond window horizon and no rule given");
    }
    return beyond(d);
}

bool spacing_check(const SpacingSet& p, const Word& w) {
    if (*w.alphabet() != *Alphabet::binary()) {
        throw PreconditionError("spacing_check expects a binary word");
    }
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < w.length(); ++i) {
        if (w.at(i) == '1') ones.push_back(i);
    }
    for (std::size_t i = 0; i < ones.size(); ++i) {
        for (std::size_t j = i + 1; j < ones.size(); ++j) {
            if (!p.contains(ones[j] - ones[i])) return false;
        }
    }
    return true;
}

CodedGenerator::CodedGenerator(std::vector<Word> ws) : words(std::move(ws)) {
    if (words.empty()) {
        throw DomainError("coded generator needs at least one word");
    }
    const AlphabetPtr& alpha = words.front().alphabet();
    for (const Word& w : words) {
        if (w.is_empty()) {
            throw DomainError("coded generator words must be nonempty");
        }
        if (!same_alphabet(w.alphabet(), alpha)) {
            throw AlphabetMismatchError("coded generator over mixed alphabets");
        }
    }
}

namespace {

// Search for a double factorization. Both sides parse the same string; a
// state is the unmatched overhang of the side that is ahead. The X side may
// owe a trailing word-part `p` (rotation case). Dedup keeps shortest paths,
// which preserves existence of counterexamples within the length bound.
struct AlignState {
    std::string over;
    int side = 0;  // +1: X ahead by `over`; -1: Y ahead; 0: aligned
    bool operator<(const AlignState& o) const {
        return std::tie(side, over) < std::tie(o.side, o.over);
    }
};

struct AlignNode {
    AlignState st;
    std::size_t len;           // length of the longer side so far
    std::vector<Word> xs, ys;  // words emitted so far (xs excludes x1 bookkeeping)
};

// Greedy leftmost factorization of text over the code, if one exists.
std::optional<std::vector<Word>> factorize(const std::string& text,
                                           const std::vector<Word>& words) {
    std::size_t n = text.size();
    std::vector<int> via(n + 1, -1);
    std::vector<char> ok(n + 1, 0);
    ok[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ok[i]) continue;
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            const std::string& w = words[wi].str();
            if (i + w.size() <= n && !ok[i + w.size()] && text.compare(i, w.size(), w) == 0) {
                ok[i + w.size()] = 1;
                via[i + w.size()] = static_cast<int>(wi);
            }
        }
    }
    if (!ok[n]) return std::nullopt;
    std::vector<Word> out;
    for (std::size_t i = n; i > 0; i -= words[via[i]].length()) {
        out.push_back(words[via[i]]);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

CircularVerdict circular_code_check(const CodedGenerator& gen, std::size_t test_length) {
    std::size_t max_len = 0;
    for (const Word& w : gen.words) {
        max_len = std::max(max_len, w.length());
    }
    if (test_length < 2 * max_len) {
        throw PreconditionError("test_length must be at least twice the longest word");
    }
    const AlphabetPtr& alpha = gen.words.front().alphabet();
    const auto& words = gen.words;

    auto expand = [&](std::deque<AlignNode>& queue, std::map<AlignState, std::size_t>& seen,
                      const AlignNode& node) {
        // the side that is behind (or either, when aligned) emits a word
        for (const Word& w : words) {
            for (int emitter : {+1, -1}) {
                if (node.st.side == emitter) continue;  // ahead side cannot emit
                AlignNode next = node;
                const std::string& ws = w.str();
                const std::string& over = node.st.over;
                if (node.st.side == 0) {
                    // aligned: only X emits (Y response comes on the next turn);
                    // restricting to one side avoids duplicate interleavings
                    if (emitter != +1) continue;
                    next.st = {ws, +1};
                    next.len += ws.size();
                } else if (ws.size() <= over.size()) {
                    if (over.compare(0, ws.size(), ws) != 0) continue;
                    next.st = {over.substr(ws.size()), node.st.side};
                    if (next.st.over.empty()) next.st.side = 0;
                } else {
                    if (ws.compare(0, over.size(), over) != 0) continue;
                    next.st = {ws.substr(over.size()), -node.st.side};
                    next.len += ws.size() - over.size();
                }
                if (next.len > test_length) continue;
                (emitter > 0 ? next.xs : next.ys).push_back(w);
                auto it = seen.find(next.st);
                if (it != seen.end() && it->second <= next.len) continue;
                seen[next.st] = next.len;
                queue.push_back(std::move(next));
            }
        }
    };

    // Case A: rotation inside x1. x1 = p + s, both nonempty; the combined
    // string is s x2 ... xm p, and any parse of it by Y violates circularity.
    for (const Word& x1 : words) {
        for (std::size_t cut = 1; cut < x1.length(); ++cut) {
            Word p = x1.subword(0, cut);
            Word s = x1.subword(cut, x1.length() - cut);
            std::map<AlignState, std::size_t> seen;
            std::deque<AlignNode> queue;
            queue.push_back({{s.str(), +1}, s.length(), {}, {}});
            seen[queue.front().st] = queue.front().len;
            while (!queue.empty()) {
                AlignNode node = queue.front();
                queue.pop_front();
                // try closing X with the trailing p
                const std::string& over = node.st.over;
                std::string rest;
                std::size_t final_len = 0;
                bool closable = false;
                if (node.st.side >= 0) {
                    // X ahead by `over` (or aligned): Y still owes over + p
                    rest = over + p.str();
                    final_len = node.len + p.length();
                    closable = true;
                } else if (p.str().size() >= over.size() &&
                           p.str().compare(0, over.size(), over) == 0) {
                    rest = p.str().substr(over.size());
                    final_len = node.len + p.length() - over.size();
                    closable = true;
                }
                if (closable && final_len <= test_length) {
                    if (auto tail = factorize(rest, words)) {
                        CircularCounterexample ce;
                        ce.p = p;
                        ce.s = s;
                        ce.xs.push_back(x1);
                        for (const Word& w : node.xs) ce.xs.push_back(w);
                        ce.ys = node.ys;
                        for (const Word& w : *tail) ce.ys.push_back(w);
                        return {false, test_length, ce};
                    }
                }
                expand(queue, seen, node);
            }
        }
    }

    // Case B: aligned start, different factorizations of the same string.
    {
        std::map<AlignState, std::size_t> seen;
        std::deque<AlignNode> queue;
        for (const Word& x1 : words) {
            for (const Word& y1 : words) {
                if (x1.str() == y1.str()) continue;
                const std::string& a = x1.str();
                const std::string& b = y1.str();
                if (a.size() < b.size() && b.compare(0, a.size(), a) == 0) {
                    queue.push_back({{b.substr(a.size()), -1}, b.size(), {x1}, {y1}});
                } else if (b.size() < a.size() && a.compare(0, b.size(), b) == 0) {
                    queue.push_back({{a.substr(b.size()), +1}, a.size(), {x1}, {y1}});
                }
            }
        }
        for (const auto& n : queue) {
            seen[n.st] = n.len;
        }
        while (!queue.empty()) {
            AlignNode node = queue.front();
            queue.pop_front();
            if (node.st.side == 0) {
                CircularCounterexample ce;
                ce.p = Word::empty(alpha);
                ce.s = node.xs.front();
                ce.xs = node.xs;
                ce.ys = node.ys;
                return {false, test_length, ce};
            }
            expand(queue, seen, node);
        }
    }

    return {true, test_length, std::nullopt};
}

VertexShift flower_graph(const CodedGenerator& gen) {
    std::string pool = symbol_pool();
    std::size_t needed = 1;
    for (const Word& w : gen.words) {
        needed += w.length() - 1;
    }
    if (needed > pool.size()) {
        throw DomainError("flower graph needs more vertex names than available");
    }
    std::string names = pool.substr(0, needed);
    char center = names[0];
    std::vector<std::pair<char, char>> edges;
    std::size_t next = 1;
    for (const Word& w : gen.words) {
        char prev = center;
        for (std::size_t i = 0; i + 1 < w.length(); ++i) {
            char v = names[next++];
            edges.emplace_back(prev, v);
            prev = v;
        }
        edges.emplace_back(prev, center);
    }
    return VertexShift::from_edges(Alphabet::make(names), edges);
}

SynchronizingVerdict verify_synchronizing(const VertexShift& g, const Word& s,
                                          std::size_t depth) {
    if (s.is_empty() || !g.language_contains(s)) {
        throw PreconditionError("candidate word is not in the language");
    }
    // enumerate path words of length <= depth ending before s (for u) and
    // starting after s (for v)
    std::vector<Word> us{Word::empty(g.vertices())};
    std::vector<Word> vs{Word::empty(g.vertices())};
    std::vector<std::string> frontier{""};
    for (std::size_t l = 1; l <= depth; ++l) {
        std::vector<std::string> next;
        for (const auto& u : frontier) {
            for (char c : g.vertices()->symbols()) {
                std::string cand = u + c;
                if (cand.size() >= 2 && !g.has_edge(cand[cand.size() - 2], cand.back())) continue;
                next.push_back(cand);
            }
        }
        frontier = std::move(next);
        for (const auto& u : frontier) {
            us.emplace_back(g.vertices(), u);
            vs.emplace_back(g.vertices(), u);
        }
    }
    auto in_lang = [&](const Word& a, const Word& b) {
        return g.language_contains(concat({a, b}));
    };
    for (const Word& u : us) {
        if (!in_lang(u, s)) continue;
        for (const Word& v : vs) {
            if (!in_lang(s, v)) continue;
            if (!g.language_contains(concat({u, s, v}))) {
                return {false, depth, std::make_pair(u, v)};
            }
        }
    }
    return {true, depth, std::nullopt};
}

}  // namespace symdyn
