#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/nat_sets.hpp"
#include "symdyn/words.hpp"

namespace symdyn {

// Directed graph over an alphabet presenting an SFT by its infinite paths.
// Construction prunes vertices that cannot lie on a bi-infinite path, so
// every remaining vertex has in- and out-degree >= 1; all path questions
// are answered exactly on the pruned graph.
class VertexShift {
  public:
    static VertexShift from_edges(const AlphabetPtr& vertices,
                                  const std::vector<std::pair<char, char>>& edges);
    static VertexShift full_shift(AlphabetPtr alphabet);

    const AlphabetPtr& vertices() const { return vertices_; }
    std::size_t vertex_count() const { return vertices_->size(); }
    bool has_edge(char from, char to) const;
    const std::vector<std::size_t>& out(std::size_t v) const { return out_[v]; }
    const std::vector<std::size_t>& in(std::size_t v) const { return in_[v]; }
    std::vector<std::pair<char, char>> edges() const;

    // True iff w is the vertex sequence of a path; the empty word is always
    // in the language of a nonempty pruned graph.
    bool language_contains(const Word& w) const;

  private:
    VertexShift() = default;

    AlphabetPtr vertices_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
};

// SFT by a finite list of forbidden words over an alphabet.
struct SFTSpec {
    AlphabetPtr alphabet;
    std::vector<Word> forbidden;
};

SFTSpec parse_sft_spec(const std::string& alphabet, const std::string& forbidden_csv);

// Vertex-shift presentation of an SFT. For forbidden words longer than 2 the
// vertices are fresh symbols standing for allowed (m-1)-blocks; vertex_blocks
// records the conjugacy.
struct SftPresentation {
    VertexShift graph;
    std::vector<std::string> vertex_blocks;  // block named by each vertex, in vertex order
    std::size_t block_length = 1;

    // Recode a word over the original alphabet as the vertex word of its
    // (m-1)-block path. Words shorter than one block are rejected.
    Word encode_blocks(const Word& w) const;
};

SftPresentation forbidden_to_vertex(const SFTSpec& spec);

// True iff w avoids every forbidden factor and extends to a legal word on
// both sides; brute-force reference for the graph path test.
bool sft_scan_admissible(const SFTSpec& spec, const Word& w);

struct TransitivityVerdict {
    bool transitive = false;
    // When not transitive: two vertices with no path from first to second.
    std::optional<std::pair<char, char>> witness;
};

TransitivityVerdict is_transitive(const VertexShift& g);

struct PeriodVerdict {
    std::size_t period = 0;  // gcd of cycle lengths
    bool mixing = false;     // strongly connected and period 1
};

PeriodVerdict graph_period(const VertexShift& g);

// Subset of N constraining distances between 1s of a spacing shift: an
// explicit window plus an optional rule for indices beyond it.
struct SpacingSet {
    WindowSet window;
    std::function<bool(std::size_t)> beyond;  // may be empty

    bool contains(std::size_t d) const;
};

bool spacing_check(const SpacingSet& p, const Word& w);

// Generating word set of a coded system.
struct CodedGenerator {
    std::vector<Word> words;

    CodedGenerator(std::vector<Word> ws);
};

struct CircularCounterexample {
    Word p;  // proper rotation offset inside x_1 (empty for an aligned violation)
    Word s;  // x_1 = p s
    std::vector<Word> xs;
    std::vector<Word> ys;
};

struct CircularVerdict {
    bool circular = false;  // no counterexample among concatenations <= bound
    std::size_t bound = 0;
    std::optional<CircularCounterexample> counterexample;
};

// Exhaustive search for a misaligned or ambiguous double factorization among
// all concatenations of total length <= test_length.
CircularVerdict circular_code_check(const CodedGenerator& gen, std::size_t test_length);

// One central vertex with a cycle of length |w| per generating word. The
// period of this presentation is gcd of the word lengths; it is a property
// of the presentation, not a conjugacy invariant of the coded system.
VertexShift flower_graph(const CodedGenerator& gen);

struct SynchronizingVerdict {
    bool synchronizing = false;
    std::size_t depth = 0;  // extension length the check exhausted
    std::optional<std::pair<Word, Word>> failure;  // (u, v) with us, sv in L but usv not
};

// Checks "us, sv in L => usv in L" for all extensions up to `depth`.
SynchronizingVerdict verify_synchronizing(const VertexShift& g, const Word& s, std::size_t depth);

}  // namespace symdyn
