#include "symdyn/witnesses.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace symdyn {

namespace {

void require_binary(const SymbolStream& x, const char* who) {
    if (*x.alphabet() != *Alphabet::binary()) {
        throw PreconditionError(std::string(who) + " expects a binary stream");
    }
}

}  // namespace

BlockPair::BlockPair(Word b_, Word c_, VertexShift context_)
    : b(std::move(b_)), c(std::move(c_)), context(std::move(context_)) {
    if (b.is_empty() || c.is_empty()) {
        throw ConstructionInvariantError("block pair with an empty block");
    }
    if (b.length() != c.length()) {
        throw ConstructionInvariantError("block pair with unequal lengths");
    }
    if (b.str() == c.str()) {
        throw ConstructionInvariantError("block pair with equal blocks");
    }
    for (const Word* x : {&b, &c}) {
        for (const Word* y : {&b, &c}) {
            if (!context.language_contains(concat({*x, *y}))) {
                throw ConstructionInvariantError("block junction " + x->str() + "|" + y->str() +
                                                 " not admissible in the context shift");
            }
        }
    }
}

std::size_t base_diag_index(std::size_t k) {
    // k >= 1; k-1 = t(t+1)/2 + j with 0 <= j <= t
    std::size_t t = 0;
    std::size_t tri = 0;
    while (tri + t + 1 <= k - 1) {
        ++t;
        tri += t;
    }
    return k - 1 - tri;
}

std::size_t base_block_start(std::size_t k) {
    return (k - 1) * (k + 2) / 2;
}

namespace {

class BaseScrambledRule final : public StreamRule {
  public:
    explicit BaseScrambledRule(SymbolStream eta) : eta_(std::move(eta)) {
        require_binary(eta_, "base_scrambled");
    }

    const AlphabetPtr& alphabet() const override { return eta_.alphabet(); }

    Recipe recipe() const override { return {"base-scrambled", {}, {eta_.recipe()}}; }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t max_r = 0;
        for (std::size_t k = 1; base_block_start(k) < count; ++k) {
            max_r = std::max(max_r, base_diag_index(k));
        }
        const std::string eta = eta_.prefix(max_r + 1).str();
        std::size_t written = 0;
        for (std::size_t k = 1; written < count; ++k) {
            for (std::size_t i = 0; i < k && written < count; ++i) {
                out.push_back('0');
                ++written;
            }
            if (written < count) {
                out.push_back(eta[base_diag_index(k)]);
                ++written;
            }
        }
    }

  private:
    SymbolStream eta_;
};

class SpreadEmbedRule final : public StreamRule {
  public:
    explicit SpreadEmbedRule(SymbolStream x) : x_(std::move(x)) {
        require_binary(x_, "spread_embed");
    }

    const AlphabetPtr& alphabet() const override { return x_.alphabet(); }

    Recipe recipe() const override { return {"spread-embed", {}, {x_.recipe()}}; }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < count) {
            ++bits;
        }
        const std::string xs = x_.prefix(bits + 1).str();
        for (std::size_t n = 0; n < count; ++n) {
            if (n >= 1 && (n & (n - 1)) == 0) {
                std::size_t k = 0;
                while ((std::size_t{1} << k) < n) ++k;
                out.push_back(xs[k]);
            } else {
                out.push_back('0');
            }
        }
    }

  private:
    SymbolStream x_;
};

class GeometricBlocksRule final : public StreamRule {
  public:
    explicit GeometricBlocksRule(SymbolStream x) : x_(std::move(x)) {
        require_binary(x_, "geometric_blocks");
    }

    const AlphabetPtr& alphabet() const override { return x_.alphabet(); }

    Recipe recipe() const override { return {"geometric-blocks", {}, {x_.recipe()}}; }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t blocks = 1;
        while (blocks * (blocks + 1) / 2 < count) {
            ++blocks;
        }
        const std::string xs = x_.prefix(blocks).str();
        std::size_t written = 0;
        for (std::size_t n = 0; written < count; ++n) {
            for (std::size_t i = 0; i <= n && written < count; ++i) {
                out.push_back(xs[n]);
                ++written;
            }
        }
    }

  private:
    SymbolStream x_;
};

class QuarticSpreadRule final : public StreamRule {
  public:
    explicit QuarticSpreadRule(SymbolStream x) : x_(std::move(x)) {
        require_binary(x_, "quartic_spread");
    }

    const AlphabetPtr& alphabet() const override { return x_.alphabet(); }

    Recipe recipe() const override { return {"quartic-spread", {}, {x_.recipe()}}; }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t levels = 1;
        std::size_t pow = 4;
        while (pow < count) {
            pow *= 4;
            ++levels;
        }
        const std::string xs = x_.prefix(levels + 1).str();
        std::size_t block_end = 4;  // end of [4^n, 4^{n+1}) for n = 0
        std::size_t n = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (i == 0) {
                out.push_back('0');
                continue;
            }
            if (i >= block_end) {
                block_end *= 4;
                ++n;
            }
            out.push_back(xs[n]);
        }
    }

  private:
    SymbolStream x_;
};

class BlockConcatRule final : public StreamRule {
  public:
    BlockConcatRule(Word b, Word c, SymbolStream xi)
        : b_(std::move(b)), c_(std::move(c)), xi_(std::move(xi)) {
        require_binary(xi_, "block_concat");
    }

    const AlphabetPtr& alphabet() const override { return b_.alphabet(); }

    Recipe recipe() const override {
        return {"block-concat", {{"B", b_.str()}, {"C", c_.str()}}, {xi_.recipe()}};
    }

    void generate(std::size_t count, std::string& out) const override {
        std::size_t blocklen = b_.length();
        std::size_t nblocks = (count + blocklen - 1) / blocklen;
        const std::string xi = xi_.prefix(nblocks).str();
        for (std::size_t j = 0; j < nblocks; ++j) {
            const std::string& w = xi[j] == '0' ? b_.str() : c_.str();
            std::size_t take = std::min(blocklen, count - j * blocklen);
            out.append(w, 0, take);
        }
    }

  private:
    Word b_;
    Word c_;
    SymbolStream xi_;
};

}  // namespace

SymbolStream base_scrambled(const SymbolStream& eta) {
    return SymbolStream(std::make_shared<BaseScrambledRule>(eta));
}

SymbolStream spread_embed(const SymbolStream& x) {
    return SymbolStream(std::make_shared<SpreadEmbedRule>(x));
}

SymbolStream geometric_blocks(const SymbolStream& x) {
    return SymbolStream(std::make_shared<GeometricBlocksRule>(x));
}

SymbolStream quartic_spread(const SymbolStream& x) {
    return SymbolStream(std::make_shared<QuarticSpreadRule>(x));
}

SymbolStream block_concat(const BlockPair& bp, const SymbolStream& xi) {
    return SymbolStream(std::make_shared<BlockConcatRule>(bp.b, bp.c, xi));
}

Word block_concat_witness(const BlockPair& bp, const SymbolStream& xi, std::size_t length) {
    Word prefix = block_concat(bp, xi).prefix(length);
    std::size_t window = 2 * bp.b.length();
    for (std::size_t i = 0; i < prefix.length(); ++i) {
        std::size_t len = std::min(window, prefix.length() - i);
        if (!bp.context.language_contains(prefix.subword(i, len))) {
            throw ConstructionInvariantError("witness factor at " + std::to_string(i) +
                                             " is not admissible");
        }
    }
    return prefix;
}

namespace {

// shortest path from -> to with at least one edge, as the vertex sequence
// including both endpoints; from == to yields a shortest cycle {v,...,v}
std::vector<std::size_t> shortest_path(const VertexShift& g, std::size_t from, std::size_t to) {
    std::vector<long long> parent(g.vertex_count(), -2);
    std::deque<std::size_t> q;
    for (std::size_t w : g.out(from)) {
        if (parent[w] == -2) {
            parent[w] = static_cast<long long>(from);
            q.push_back(w);
        }
    }
    while (!q.empty()) {
        std::size_t v = q.front();
        q.pop_front();
        if (v == to) break;
        for (std::size_t w : g.out(v)) {
            if (parent[w] == -2) {
                parent[w] = static_cast<long long>(v);
                q.push_back(w);
            }
        }
    }
    if (parent[to] == -2) {
        return {};
    }
    std::vector<std::size_t> path{to};
    do {
        path.push_back(static_cast<std::size_t>(parent[path.back()]));
    } while (path.back() != from && path.size() <= g.vertex_count() + 2);
    std::reverse(path.begin(), path.end());
    return path;
}

Word word_of(const VertexShift& g, const std::vector<std::size_t>& path) {
    std::string s;
    for (std::size_t v : path) {
        s += g.vertices()->symbol(v);
    }
    return Word(g.vertices(), std::move(s));
}

void require_cycle(const VertexShift& g, const Word& w) {
    if (w.is_empty() || !g.language_contains(w) || !g.has_edge(w.at(w.length() - 1), w.at(0))) {
        throw PreconditionError("word '" + w.str() + "' does not label a cycle");
    }
}

}  // namespace

SftBlocks derive_sft_blocks(const VertexShift& g, const Word& w) {
    if (!is_transitive(g).transitive) {
        throw PreconditionError("derive_sft_blocks requires a strongly connected graph");
    }
    require_cycle(g, w);
    bool single_cycle = true;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.out(v).size() != 1) {
            single_cycle = false;
            break;
        }
    }
    if (single_cycle) {
        throw FiniteShiftError("the graph is a single cycle; the shift is finite");
    }

    auto letters = letters_of(w);
    Word w_used = w;
    Word u = Word::empty(g.vertices());

    if (letters.size() < g.vertex_count()) {
        // cycle through w_0 visiting a letter outside alp(w)
        std::size_t w0 = g.vertices()->index_of(w.at(0));
        std::size_t b = g.vertex_count();
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            if (!letters.count(g.vertices()->symbol(v))) {
                b = v;
                break;
            }
        }
        auto there = shortest_path(g, w0, b);
        auto back = shortest_path(g, b, w0);
        if (there.empty() || back.empty()) {
            throw InternalInvariantError("strong connectivity lost during cycle search");
        }
        std::vector<std::size_t> cycle(there.begin(), there.end());
        cycle.insert(cycle.end(), back.begin() + 1, back.end() - 1);
        u = word_of(g, cycle);
    } else {
        // shortest cycle anywhere, then rotate w to start at its first vertex
        std::vector<std::size_t> best;
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            auto cyc = shortest_path(g, v, v);
            if (!cyc.empty() && (best.empty() || cyc.size() < best.size())) {
                best = cyc;
            }
        }
        if (best.empty()) {
            throw InternalInvariantError("no cycle in a strongly connected graph");
        }
        best.pop_back();  // drop the repeated start
        u = word_of(g, best);
        char u0 = u.at(0);
        std::size_t rot = w.str().find(u0);
        std::string rotated = w.str().substr(rot) + w.str().substr(0, rot);
        w_used = Word(g.vertices(), rotated);
    }

    Word b_block = w_used.repeated(u.length());
    Word c_block = u.repeated(w_used.length());
    return SftBlocks{BlockPair(std::move(b_block), std::move(c_block), g), w_used, u};
}

SynchronizingBlocks synchronizing_blocks(const VertexShift& g, const Word& s,
                                         std::size_t depth) {
    if (s.is_empty() || !g.language_contains(s)) {
        throw PreconditionError("synchronizing word must be in the language");
    }
    char s_last = s.at(s.length() - 1);
    char s_first = s.at(0);

    // extensions u of s: paths starting with an edge from s_last
    std::vector<std::string> frontier;
    for (std::size_t v : g.out(g.vertices()->index_of(s_last))) {
        frontier.push_back(std::string(1, g.vertices()->symbol(v)));
    }
    std::sort(frontier.begin(), frontier.end());

    // v: path word closing s u v s, possibly empty
    auto close = [&](const Word& uu) -> std::optional<Word> {
        char from = uu.at(uu.length() - 1);
        if (g.has_edge(from, s_first)) {
            return Word::empty(g.vertices());
        }
        auto path = shortest_path(g, g.vertices()->index_of(from),
                                  g.vertices()->index_of(s_first));
        if (path.size() < 2 || path.size() - 2 > depth) {
            return std::nullopt;
        }
        return word_of(g, {path.begin() + 1, path.end() - 1});
    };

    constexpr std::size_t kPairCap = 64;  // candidate pairs examined per length
    for (std::size_t len = 1; len <= depth; ++len) {
        std::size_t limit = std::min(frontier.size(), kPairCap);
        for (std::size_t i = 0; i < limit; ++i) {
            for (std::size_t j = i + 1; j < limit; ++j) {
                Word u(g.vertices(), frontier[i]);
                Word u_alt(g.vertices(), frontier[j]);
                auto v = close(u);
                auto v_alt = close(u_alt);
                if (v && v_alt) {
                    Word b = concat({s, u, *v, s, u_alt, *v_alt});
                    Word c = concat({s, u_alt, *v_alt, s, u, *v});
                    return SynchronizingBlocks{BlockPair(std::move(b), std::move(c), g), u,
                                               u_alt, *v, *v_alt};
                }
            }
        }
        std::vector<std::string> next;
        for (const auto& f : frontier) {
            for (std::size_t v : g.out(g.vertices()->index_of(f.back()))) {
                next.push_back(f + g.vertices()->symbol(v));
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    throw SearchExhaustedError("no block pair found within depth " + std::to_string(depth));
}

namespace {

// exists a path with exactly `edges` edges from a to b, via boolean matrix powers
struct PathTable {
    std::vector<std::vector<std::vector<bool>>> reach;  // [edges][a][b], edges from 1

    PathTable(const VertexShift& g, std::size_t max_edges) {
        std::size_t n = g.vertex_count();
        std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
        for (std::size_t v = 0; v < n; ++v) {
            for (std::size_t w : g.out(v)) {
                adj[v][w] = true;
            }
        }
        reach.push_back(adj);
        for (std::size_t e = 2; e <= max_edges; ++e) {
            const auto& prev = reach.back();
            std::vector<std::vector<bool>> cur(n, std::vector<bool>(n, false));
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t m = 0; m < n; ++m) {
                    if (!prev[a][m]) continue;
                    for (std::size_t b = 0; b < n; ++b) {
                        if (adj[m][b]) cur[a][b] = true;
                    }
                }
            }
            reach.push_back(std::move(cur));
        }
    }

    bool has(std::size_t edges, std::size_t a, std::size_t b) const {
        return edges >= 1 && edges <= reach.size() && reach[edges - 1][a][b];
    }

    // interior vertices of a path with `edges` edges from a to b
    std::vector<std::size_t> interior(const VertexShift& g, std::size_t edges, std::size_t a,
                                      std::size_t b) const {
        std::vector<std::size_t> out;
        std::size_t cur = a;
        for (std::size_t left = edges; left > 1; --left) {
            for (std::size_t m : g.out(cur)) {
                if (has(left - 1, m, b)) {
                    out.push_back(m);
                    cur = m;
                    break;
                }
            }
        }
        return out;
    }
};

}  // namespace

TargetedBlocks synchronizing_blocks_targeted(const VertexShift& g, const Word& s,
                                             const Word& u, const Word& u_alt,
                                             std::size_t depth) {
    if (s.is_empty() || !g.language_contains(s)) {
        throw PreconditionError("synchronizing word must be in the language");
    }
    if (u.is_empty() || u_alt.is_empty() || !g.language_contains(u) ||
        !g.language_contains(u_alt)) {
        throw PreconditionError("target words must be nonempty and in the language");
    }
    if (u.length() != u_alt.length()) {
        throw PreconditionError("target words must have equal length");
    }
    auto idx = [&](char c) { return g.vertices()->index_of(c); };
    std::size_t s_last = idx(s.at(s.length() - 1));
    std::size_t s_first = idx(s.at(0));
    std::size_t u0 = idx(u.at(0));
    std::size_t u_end = idx(u.at(u.length() - 1));
    std::size_t a0 = idx(u_alt.at(0));
    std::size_t a_end = idx(u_alt.at(u_alt.length() - 1));

    PathTable table(g, depth + 1);
    auto find_len = [&](std::size_t from1, std::size_t to1, std::size_t from2,
                        std::size_t to2) -> std::optional<std::size_t> {
        for (std::size_t l = 0; l <= depth; ++l) {
            if (table.has(l + 1, from1, to1) && table.has(l + 1, from2, to2)) {
                return l;
            }
        }
        return std::nullopt;
    };

    auto lp = find_len(s_last, u0, s_last, a0);
    auto lq = find_len(u_end, a0, a_end, u0);
    auto lr = find_len(a_end, s_first, u_end, s_first);
    if (!lp || !lq || !lr) {
        throw SearchExhaustedError("no equal-length paddings within depth " +
                                   std::to_string(depth));
    }
    auto word_for = [&](std::size_t edges, std::size_t a, std::size_t b) {
        return word_of(g, table.interior(g, edges, a, b));
    };
    Word p = word_for(*lp + 1, s_last, u0);
    Word p_alt = word_for(*lp + 1, s_last, a0);
    Word q = word_for(*lq + 1, u_end, a0);
    Word q_alt = word_for(*lq + 1, a_end, u0);
    Word r = word_for(*lr + 1, a_end, s_first);
    Word r_alt = word_for(*lr + 1, u_end, s_first);

    Word b = concat({s, p, u, q, u_alt, r});
    Word c = concat({s, p_alt, u_alt, q_alt, u, r_alt});
    return TargetedBlocks{BlockPair(std::move(b), std::move(c), g), p, p_alt, q, q_alt, r,
                          r_alt};
}

Word coded_family_padding(std::size_t k) {
    if (k < 1) {
        throw PreconditionError("padding index starts at 1");
    }
    // lengths 2, 4, ...: 4^l words of length 2l
    std::size_t l = 1;
    std::size_t count = 4;  // words of length 2
    std::size_t before = 0;
    while (k > before + count) {
        before += count;
        count *= 4;
        ++l;
    }
    std::size_t offset = k - before - 1;
    std::string bits(2 * l, '0');
    for (std::size_t i = 0; i < 2 * l; ++i) {
        if (offset & (std::size_t{1} << (2 * l - 1 - i))) {
            bits[i] = '1';
        }
    }
    return Word(Alphabet::binary(), std::move(bits));
}

CodedGenerator coded_family(std::size_t n) {
    if (n < 1) {
        throw PreconditionError("coded family needs n >= 1");
    }
    std::vector<Word> words;
    for (std::size_t k = 1; k <= n; ++k) {
        Word u = coded_family_padding(k);
        if (u.length() > 2 * k) {
            throw InternalInvariantError("padding u(" + std::to_string(k) +
                                         ") exceeds length 2k");
        }
        std::string w = "1" + u.str() + "1" + std::string(4 * k, '0');
        words.emplace_back(Alphabet::binary(), std::move(w));
    }
    return CodedGenerator(std::move(words));
}

}  // namespace symdyn
