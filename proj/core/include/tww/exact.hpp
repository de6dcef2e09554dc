#pragma once

#include <optional>
#include <set>

#include "tww/caps.hpp"
#include "tww/trigraph.hpp"

namespace tww {

struct ExactResult {
    int width = 0;
    ContractionSequence sequence;
};

// Minimum width over all contraction sequences, with a witness. Iterative
// deepening on the budget; states are deduplicated per round by a canonical
// code (lexicographically minimal adjacency encoding over the automorphism
// candidates left by iterated degree refinement). Witness ties break
// lexicographically, so the result is deterministic; `threads` > 1 explores
// first moves in parallel without changing it.
ExactResult exact_twinwidth(const Trigraph& g, const Caps& caps = {}, int threads = 1);

// Repeatedly contracts the lexicographically smallest twin pair (false or
// true twins); a full 0-sequence results iff the graph is a cograph.
std::optional<ContractionSequence> cograph_zero_sequence(const Trigraph& g);

// Upper-bound heuristic: each step contracts the pair minimizing the
// resulting maximum red degree, ties by fewer red edges then lexicographic.
ContractionSequence greedy_sequence(const Trigraph& g);

// Extends a width-d sequence of G to one for G plus a new vertex joined by
// black edges to X. Every step of seqG is simulated by contracting the two
// X sides, then the two complement sides; the apex waits until the end.
// Width at most 2(d+1).
ContractionSequence apex_sequence(const Trigraph& g, const ContractionSequence& seqG,
                                  const std::set<Vertex>& X);

// Isomorphism-invariant encoding used by the exact search; exposed for
// property tests.
std::vector<int> canonical_code(const Trigraph& g);

}  // namespace tww
