#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "symdyn/streams.hpp"
#include "symdyn/subshifts.hpp"

namespace symdyn {

// Equal-length distinct blocks admissible in a context shift under arbitrary
// concatenation; construction spot-checks the four pairwise junctions.
struct BlockPair {
    Word b;
    Word c;
    VertexShift context;

    BlockPair(Word b_, Word c_, VertexShift context_);
};

// The concrete Cantor-family parameterization: c(eta) is built from blocks,
// block k = 0^k followed by the data symbol eta_{r(k)}, where r walks the
// diagonals 0; 0,1; 0,1,2; ... so every parameter index recurs infinitely
// often. Distinct parameters give pairs with 0-run agreements (liminf 0) and
// recurring data-position differences (limsup 1).
SymbolStream base_scrambled(const SymbolStream& eta);

// r(k) and the start offset of block k in the base construction.
std::size_t base_diag_index(std::size_t k);
std::size_t base_block_start(std::size_t k);

// y_n = x_k when n = 2^k, else 0: embeds a scrambled family so that pairs
// differ only along powers of two, making closeness sets syndetic.
SymbolStream spread_embed(const SymbolStream& x);

// z = w(0)w(1)... with w(n) = x_n repeated n+1 times.
SymbolStream geometric_blocks(const SymbolStream& x);

// z_0 = 0 and z_i = x_n for i in [4^n, 4^{n+1}): differences become thick.
SymbolStream quartic_spread(const SymbolStream& x);

// Concatenate B/C following the binary parameter xi.
SymbolStream block_concat(const BlockPair& bp, const SymbolStream& xi);

// block_concat prefix with the admissibility spot-check: every factor of
// length <= 2|B| of the produced prefix must be in the context language.
Word block_concat_witness(const BlockPair& bp, const SymbolStream& xi, std::size_t length);

// Blocks B = w^{|u|}, C = u^{|w|} from a cycle word w and a companion cycle
// u with u_0 = w_0 and alp(u) != alp(w). The cycle w may be returned rotated
// when the companion forces a different starting vertex.
struct SftBlocks {
    BlockPair blocks;
    Word w;  // cycle actually used (possibly a rotation of the input)
    Word u;  // companion cycle
};

SftBlocks derive_sft_blocks(const VertexShift& g, const Word& w);

// Blocks B = s u v s u' v', C = s u' v' s u v around a synchronizing word.
struct SynchronizingBlocks {
    BlockPair blocks;
    Word u, u_alt, v, v_alt;
};

SynchronizingBlocks synchronizing_blocks(const VertexShift& g, const Word& s,
                                         std::size_t depth);

// Targeted variant: B = s p u q u' r, C = s p' u' q' u r' with |p|=|p'|,
// |q|=|q'|, |r|=|r'| and both extended words closing back onto s. The target
// words u, u' are given; the paddings are searched.
struct TargetedBlocks {
    BlockPair blocks;
    Word p, p_alt, q, q_alt, r, r_alt;
};

TargetedBlocks synchronizing_blocks_targeted(const VertexShift& g, const Word& s,
                                             const Word& u, const Word& u_alt,
                                             std::size_t depth);

// The circular-code family w(n) = 1 u(n) 1 0^{4n}, with u(k) the k-th
// nonempty even-length binary word in length-lexicographic order.
Word coded_family_padding(std::size_t k);  // u(k)
CodedGenerator coded_family(std::size_t n);

}  // namespace symdyn
