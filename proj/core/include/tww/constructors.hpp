#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/caps.hpp"
#include "tww/matrix.hpp"
#include "tww/trigraph.hpp"

namespace tww {

// Binary tree whose leaves are bijectively labeled by graph vertices.
struct DecompositionTree {
    int root = 0;
    std::map<int, std::pair<int, int>> children;  // internal node -> two child ids
    std::map<int, Vertex> leaf_label;

    void validate(const std::set<Vertex>& domain) const;
    std::vector<Vertex> leaves_below(int node) const;
};

// Counts distinct neighborhood unions across the cut (leaves_below(node),
// rest) on both sides by closing single-vertex traces under union; true iff
// every tree edge stays within 2^k classes. k is capped at 8.
bool boolean_width_at_most(const Trigraph& g, const DecompositionTree& t, int k);

// Contraction schedule driven by the decomposition tree: repeatedly descend
// to a subtree with between 2^k+1 and 2^{k+1} leaves (largest child first,
// ties to the first child), contract the lexicographically least leaf pair
// with equal black trace outside, and smooth the tree. Width <= 2^{k+1}-1.
// Once at most 2^k+1 vertices remain the tree is dropped and the two
// smallest ids are contracted repeatedly.
ContractionSequence boolw_sequence(const Trigraph& g, const DecompositionTree& t, int k);

// All-red d-dimensional grid on [n]^d; vertex id = 1 + sum (x_p - 1) n^(p-1).
Trigraph red_grid(int d, int n);

// Layered collapse of the all-red grid: each recursive step of the
// (d-1)-dimensional schedule is replayed in every layer (last coordinate
// 1..n in order) before the next step; the final red path is contracted from
// the left. Width <= 3d.
ContractionSequence grid_sequence(int d, int n);

// Kings graph on the given occupied lattice points (vertex i+1 has
// coordinates points[i], any integers, all red, edges = Chebyshev distance
// 1). The schedule replays the full-lattice grid collapse projected onto
// the occupied points. Width <= 2(3^d - 1); valid for any red subgraph.
ContractionSequence kings_sequence(const std::vector<std::vector<int>>& points);

struct BallConfiguration {
    int d = 0;
    std::vector<std::vector<double>> centers;  // unit radius implied
};

// Two phases: contract every supercell (ceil(sqrt(d))^d cells of side
// 2/sqrt(d), anchored at the per-axis minimum, half-open) to one vertex in
// insertion order, supercells row-major; then run the kings schedule on the
// supercell lattice. Width <= (3 ceil(sqrt(d)))^d k with k the max cell
// occupancy. G must be exactly the intersection graph (edge iff center
// distance <= 2); violations are reported.
ContractionSequence unit_ball_sequence(const BallConfiguration& c, const Trigraph& g);

// Max occupancy over the grid cells used by unit_ball_sequence (its k).
int unit_ball_occupancy(const BallConfiguration& c);

// Strict partial order on [n], stored transitively closed.
struct Poset {
    int n = 0;
    std::set<std::pair<int, int>> less;

    void validate() const;
    static Poset from_arcs(int n, const std::vector<std::pair<int, int>>& arcs,
                           bool transitive_closure);
};

struct PosetOrderResult {
    std::vector<Vertex> order;                 // chains concatenated
    std::vector<std::vector<Vertex>> chains;   // each increasing in the poset
    int width = 0;                             // number of chains
};

// Minimum chain partition via maximum bipartite matching on the
// comparability split graph; chains are listed by smallest member and
// concatenated. The count equals the maximum antichain size.
PosetOrderResult poset_order(const Poset& p);

// Exhaustive maximum-antichain search, the Dilworth cross-check. n <= cap.
int max_antichain(const Poset& p, int cap = 14);

// Single relation "lt" holding the strict order arcs.
BinaryStructure poset_structure(const Poset& p);

// Domain {1..n} for positions and {n+1..2n} for values: total orders ">=" on
// both copies (reflexive) and double arcs between i and its image. The
// companion order is 1..n, n+1..2n.
struct PermutationStructureResult {
    BinaryStructure structure;
    std::vector<Vertex> order;
};

PermutationStructureResult permutation_structure(const std::vector<int>& tau);

// 0/1 matrix of tau: entry (i,j) = 1 iff tau(j) = i.
AlphabetMatrix permutation_matrix(const std::vector<int>& tau);

// Classical pattern containment, by direct subsequence search.
bool contains_pattern(const std::vector<int>& tau, const std::vector<int>& sigma);
// The same predicate decided on the permutation matrices.
bool matrix_contains_pattern(const std::vector<int>& tau, const std::vector<int>& sigma);

// One step of the DFS audit trail: every candidate component with its
// adjacency word over the discovery order, and the choice made.
struct LexDfsStep {
    Vertex active = 0;
    Vertex chosen = 0;
    std::vector<std::pair<std::vector<int>, std::vector<Vertex>>> candidates;
};

// DFS that enters the component with the lexicographically largest adjacency
// word over the discovery order (1 = adjacent to that earlier vertex); the
// next vertex is the smallest id adjacent to the active vertex among the
// components achieving the maximum. Components of G are handled by smallest
// id and concatenated.
std::vector<Vertex> lexdfs_order(const Trigraph& g, std::vector<LexDfsStep>* audit = nullptr);

}  // namespace tww
