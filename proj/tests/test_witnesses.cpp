#include <doctest.h>

#include <set>

#include "symdyn/relations.hpp"
#include "symdyn/witnesses.hpp"

using namespace symdyn;

namespace {

Word bw(const std::string& s) {
    return Word(Alphabet::binary(), s);
}

SymbolStream zeros() {
    return SymbolStream::constant(Alphabet::binary(), '0');
}

SymbolStream ones() {
    return SymbolStream::constant(Alphabet::binary(), '1');
}

VertexShift golden_graph() {
    return forbidden_to_vertex(parse_sft_spec("01", "11")).graph;
}

}  // namespace

TEST_CASE("base construction: block layout") {
    CHECK(base_block_start(1) == 0);
    CHECK(base_block_start(2) == 2);
    CHECK(base_block_start(3) == 5);
    CHECK(base_block_start(4) == 9);
    // diagonal enumeration 0; 0,1; 0,1,2; ...
    std::vector<std::size_t> r;
    for (std::size_t k = 1; k <= 10; ++k) r.push_back(base_diag_index(k));
    CHECK(r == std::vector<std::size_t>{0, 0, 1, 0, 1, 2, 0, 1, 2, 3});

    CHECK(base_scrambled(zeros()).prefix(40).str() == std::string(40, '0'));

    // eta = 1^infinity: data symbol 1 at positions s_k + k
    Word c = base_scrambled(ones()).prefix(15);
    CHECK(c.str() == "010010001000010");
}

TEST_CASE("base construction: parameters differing at 0 differ at the diagonal recurrences") {
    auto eta = SymbolStream::random(Alphabet::binary(), 7);
    auto eta2 = SymbolStream::with_flips(eta, {0});
    Word a = base_scrambled(eta).prefix(200);
    Word b = base_scrambled(eta2).prefix(200);
    std::set<std::size_t> diff_blocks;
    for (std::size_t k = 1; base_block_start(k) + k < 200; ++k) {
        if (a.at(base_block_start(k) + k) != b.at(base_block_start(k) + k)) {
            diff_blocks.insert(k);
        }
    }
    // blocks with r(k) = 0: 1, 2, 4, 7, 11, ... (and only those)
    CHECK(diff_blocks == std::set<std::size_t>{1, 2, 4, 7, 11, 16});
    for (std::size_t i = 0; i < 200; ++i) {
        bool is_data_of_zero = false;
        for (std::size_t k : diff_blocks) {
            if (i == base_block_start(k) + k) is_data_of_zero = true;
        }
        CHECK((a.at(i) != b.at(i)) == is_data_of_zero);
    }
}

TEST_CASE("base pairs: liminf 0 evidence and limsup 1") {
    auto eta = SymbolStream::random(Alphabet::binary(), 13);
    auto eta2 = SymbolStream::with_flips(eta, {0});
    auto v = pair_profile(base_scrambled(eta), base_scrambled(eta2), 3000, {1, 2, 4});
    CHECK(v.limsup_exponent == 0);   // data-position differences recur into the tail
    CHECK(v.liminf_exponent >= 30);  // 0-buffers of growing length agree
}

TEST_CASE("spread embedding places symbols on powers of two") {
    CHECK(spread_embed(zeros()).prefix(64).str() == std::string(64, '0'));
    Word y = spread_embed(ones()).prefix(20);
    for (std::size_t n = 0; n < 20; ++n) {
        bool is_power = n >= 1 && (n & (n - 1)) == 0;
        CHECK((y.at(n) == '1') == is_power);
    }
}

TEST_CASE("spread pairs: close-set gaps bounded by m+2 past 2^{m+1}") {
    auto eta = SymbolStream::random(Alphabet::binary(), 17);
    auto eta2 = SymbolStream::with_flips(eta, {0});
    auto x = spread_embed(base_scrambled(eta));
    auto y = spread_embed(base_scrambled(eta2));
    std::size_t horizon = 1 << 13;
    auto v = pair_profile(x, y, horizon, {1, 2, 3, 4, 5});
    for (const auto& level : v.levels) {
        std::size_t m = level.level;
        const auto& ms = level.close.members();
        std::size_t cut = std::size_t{1} << (m + 1);
        for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
            if (ms[i] > cut) {
                CHECK(ms[i + 1] - ms[i] <= m + 2);
            }
        }
    }
    // far set nonempty: the pair is not asymptotic at this horizon
    CHECK(v.last_difference_index.has_value());
}

TEST_CASE("geometric blocks") {
    CHECK(geometric_blocks(zeros()).prefix(30).str() == std::string(30, '0'));
    auto x = SymbolStream::eventually_periodic(bw("010"), bw("0"));
    CHECK(geometric_blocks(x).prefix(10).str() == "0110000000");

    // orbit stays near a constant stream most of the time: the times within
    // 2^-m of 0^inf or 1^inf have eventually bounded gaps
    auto z = geometric_blocks(SymbolStream::random(Alphabet::binary(), 23));
    std::size_t horizon = 2000;
    std::size_t m = 4;
    const std::string zs = z.prefix(horizon + m + 1).str();
    std::vector<std::size_t> close;
    for (std::size_t n = 0; n <= horizon; ++n) {
        bool all0 = true;
        bool all1 = true;
        for (std::size_t i = 0; i < m; ++i) {
            all0 = all0 && zs[n + i] == '0';
            all1 = all1 && zs[n + i] == '1';
        }
        if (all0 || all1) close.push_back(n);
    }
    WindowSet cs(std::move(close), horizon);
    const auto& ms = cs.members();
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
        if (ms[i] >= 2 * m * (m + 1)) {
            CHECK(ms[i + 1] - ms[i] <= 2 * (m + 1));
        }
    }
}

TEST_CASE("quartic spread intervals") {
    CHECK(quartic_spread(zeros()).prefix(64).str() == std::string(64, '0'));
    auto x = SymbolStream::eventually_periodic(bw("10"), bw("0"));
    Word z = quartic_spread(x).prefix(16);
    CHECK(z.str() == "0111000000000000");
}

TEST_CASE("block pair validation") {
    auto gm = golden_graph();
    auto b0 = Word(gm.vertices(), "00");
    auto c0 = Word(gm.vertices(), "01");
    CHECK_NOTHROW(BlockPair(b0, c0, gm));
    // junction 1|1 is forbidden
    CHECK_THROWS_AS(BlockPair(Word(gm.vertices(), "01"), Word(gm.vertices(), "10"), gm),
                    ConstructionInvariantError);
    CHECK_THROWS_AS(BlockPair(b0, Word(gm.vertices(), "010"), gm),
                    ConstructionInvariantError);  // unequal lengths
    CHECK_THROWS_AS(BlockPair(b0, b0, gm), ConstructionInvariantError);  // equal blocks
}

TEST_CASE("block concatenation witnesses") {
    auto gm = golden_graph();
    BlockPair bp(Word(gm.vertices(), "00"), Word(gm.vertices(), "01"), gm);

    CHECK(block_concat(bp, zeros()).prefix(8).str() == "00000000");
    auto xi = SymbolStream::eventually_periodic(bw("10"), bw("0"));
    CHECK(block_concat(bp, xi).prefix(6).str() == "010000");

    Word witness = block_concat_witness(bp, SymbolStream::random(Alphabet::binary(), 3), 512);
    CHECK(witness.length() == 512);
    for (std::size_t i = 0; i + 1 < witness.length(); ++i) {
        CHECK(gm.has_edge(witness.at(i), witness.at(i + 1)));
    }

    // pairs built from base parameters inherit closeness at block scale
    auto eta = SymbolStream::random(Alphabet::binary(), 4);
    auto eta2 = SymbolStream::with_flips(eta, {0});
    auto v = pair_profile(block_concat(bp, base_scrambled(eta)),
                          block_concat(bp, base_scrambled(eta2)), 2048, {1, 2});
    CHECK(v.last_difference_index.has_value());
    CHECK(v.liminf_exponent >= 40);
}

TEST_CASE("derive_sft_blocks on the golden mean") {
    auto gm = golden_graph();
    auto blocks = derive_sft_blocks(gm, Word(gm.vertices(), "0"));
    CHECK(blocks.u.str() == "01");
    CHECK(blocks.blocks.b.str() == "00");
    CHECK(blocks.blocks.c.str() == "01");

    // cycle through every vertex: rotation picks the shortest cycle's start
    auto rotated = derive_sft_blocks(gm, Word(gm.vertices(), "01"));
    CHECK(rotated.u.str() == "0");  // the self-loop at 0
    CHECK(rotated.w.str() == "01");
    CHECK(rotated.blocks.b.str() == "01");
    CHECK(rotated.blocks.c.str() == "00");

    auto full = VertexShift::full_shift(Alphabet::binary());
    auto fb = derive_sft_blocks(full, bw("0"));
    CHECK(letters_of(fb.u).count('1') == 1);

    auto two = forbidden_to_vertex(parse_sft_spec("01", "00,11")).graph;
    CHECK_THROWS_AS(derive_sft_blocks(two, Word(two.vertices(), "01")), FiniteShiftError);

    CHECK_THROWS_AS(derive_sft_blocks(gm, Word(gm.vertices(), "1")), PreconditionError);
}

TEST_CASE("synchronizing blocks") {
    auto gm = golden_graph();
    auto sb = synchronizing_blocks(gm, Word(gm.vertices(), "1"), 6);
    CHECK(sb.u.length() == sb.u_alt.length());
    CHECK(sb.u.str() != sb.u_alt.str());
    CHECK(sb.blocks.b.length() == sb.blocks.c.length());
    CHECK(gm.language_contains(sb.blocks.b));
    CHECK(gm.language_contains(sb.blocks.c));

    auto full = VertexShift::full_shift(Alphabet::binary());
    auto fsb = synchronizing_blocks(full, bw("0"), 4);
    CHECK(fsb.u.str() == "0");
    CHECK(fsb.u_alt.str() == "1");
    CHECK(fsb.v.is_empty());
    CHECK(fsb.v_alt.is_empty());

    auto two = forbidden_to_vertex(parse_sft_spec("01", "00,11")).graph;
    CHECK_THROWS_AS(synchronizing_blocks(two, Word(two.vertices(), "0"), 5),
                    SearchExhaustedError);
}

TEST_CASE("targeted blocks with given interior words") {
    auto gm = golden_graph();
    Word s(gm.vertices(), "1");
    Word u(gm.vertices(), "00");
    Word u2(gm.vertices(), "01");
    auto tb = synchronizing_blocks_targeted(gm, s, u, u2, 6);
    CHECK(tb.p.length() == tb.p_alt.length());
    CHECK(tb.q.length() == tb.q_alt.length());
    CHECK(tb.r.length() == tb.r_alt.length());
    CHECK(tb.blocks.b.length() == tb.blocks.c.length());
    // both blocks embed their target word after the shared-length prefix s p
    CHECK(tb.blocks.b.str().substr(1 + tb.p.length(), 2) == "00");
    CHECK(tb.blocks.c.str().substr(1 + tb.p.length(), 2) == "01");

    CHECK_THROWS_AS(synchronizing_blocks_targeted(gm, s, u, Word(gm.vertices(), "010"), 6),
                    PreconditionError);
}

TEST_CASE("coded family paddings stay within the length budget") {
    for (std::size_t k = 1; k <= 30; ++k) {
        Word u = coded_family_padding(k);
        CHECK(u.length() % 2 == 0);
        CHECK(u.length() >= 2);
        CHECK(u.length() <= 2 * k);
    }
    CHECK(coded_family_padding(1).str() == "00");
    CHECK(coded_family_padding(4).str() == "11");
    CHECK(coded_family_padding(5).str() == "0000");

    auto fam = coded_family(4);
    for (const auto& w : fam.words) {
        CHECK(w.length() % 2 == 0);
        CHECK(w.at(0) == '1');
    }
}

TEST_CASE("witness streams are extension-consistent") {
    auto eta = SymbolStream::random(Alphabet::binary(), 10);
    std::vector<SymbolStream> streams{
        base_scrambled(eta),
        spread_embed(base_scrambled(eta)),
        geometric_blocks(eta),
        quartic_spread(eta),
    };
    for (const auto& s : streams) {
        Word big = s.prefix(700);
        Word small = s.prefix(123);
        CHECK(big.subword(0, 123) == small);
        CHECK(s.prefix(700) == big);
    }
}
