#pragma once

#include <functional>
#include <map>
#include <vector>

#include "tww/binary_structure.hpp"
#include "tww/formula.hpp"

namespace tww {

// Rooted tree whose non-root nodes map to vertices; node 0 is the root.
// Paths from the root model quantifier-assignment prefixes. `origin` tags
// which input a node came from in shuffles (-1 otherwise).
struct MorphismNode {
    int parent = -1;
    Vertex vertex = 0;
    int origin = -1;
    std::vector<int> children;

    bool operator==(const MorphismNode&) const = default;
};

struct MorphismTree {
    std::vector<MorphismNode> nodes;

    MorphismTree() { nodes.push_back({}); }

    int node_count() const { return static_cast<int>(nodes.size()); }
    int depth(int node) const;
    int max_depth() const;
    std::vector<Vertex> tuple(int node) const;  // mapped path, root exclusive

    // every node of depth < l has one child per domain vertex
    static MorphismTree complete(const std::vector<Vertex>& domain, int l);
    // complete tree of the single-vertex domain {v}: a path
    static MorphismTree path(Vertex v, int l);

    bool operator==(const MorphismTree&) const = default;
};

// Profile of a node: part id of its vertex (0 when unpartitioned), unary
// signature, per-relation self-loop bits, then one packed word per proper
// ancestor holding the equality bit and per-relation arc bits in both
// orientations. Equal profiles mean the two vertices look alike relative to
// their ancestor tuples.
struct ProfileContext {
    const BinaryStructure* s = nullptr;
    std::function<int(Vertex)> part_of;  // empty = unpartitioned
};

std::vector<int> node_profile(const MorphismTree& t, int node, const ProfileContext& ctx);

// Interned recursive codes: code(node) = id of (profile, sorted child
// codes). Equal sibling codes certify a swap automorphism.
class CodeTable {
  public:
    int intern(const std::vector<int>& profile, std::vector<int> child_codes);

  private:
    std::map<std::pair<std::vector<int>, std::vector<int>>, int> table_;
};

// bottom-up codes for every node
std::vector<int> subtree_codes(const MorphismTree& t, const ProfileContext& ctx, CodeTable& table);

// Deletes, in every sibling group, all but the smallest-index node of each
// code; one bottom-up pass yields a tree with no equivalent siblings.
// Deterministic and idempotent.
MorphismTree reduce(const MorphismTree& t, const ProfileContext& ctx);

// Minimax evaluation over a reduction of the complete l-tree: leaves score
// the body on their profile chain, internal nodes take max (E) or min (A).
// Throws if some leaf sits at depth != l or the formula has free variables.
bool minimax_eval(const MorphismTree& t, const PrenexFormula& f, const BinaryStructure& s);

// Part-distance lookup; values above 3^l mean "far" and may be saturated.
using DistanceOracle = std::function<int(int, int)>;

// Graph on tuple positions: edge jk (j < k) iff the parts of entries j and
// k lie within distance 3^(l-k-1) in the red part graph (0-based k).
struct SequenceGraphView {
    std::vector<std::vector<char>> adj;
    std::vector<int> component;   // component id per position
    std::vector<int> local_root;  // part of the minimum position in the component
    bool connected = true;

    int size() const { return static_cast<int>(adj.size()); }
};

SequenceGraphView sequence_graph(const std::vector<int>& parts, int l, const DistanceOracle& dist);

// interleavings of current paths, one node per interleaving, depth capped
// at l; children enumerate inputs in order, then children in order
MorphismTree shuffle_l(const std::vector<const MorphismTree*>& trees, int l);

// Generalized shuffle keeping a node only if `keep(tuple, entry_roots)`
// holds, where entry_roots[i] is the root part of the entry's input tree.
// The predicate must be prefix-closed; rejected nodes prune their subtree.
struct RootedTree {
    int root_part;
    const MorphismTree* tree;
};

MorphismTree shuffle_keep(
    const std::vector<RootedTree>& inputs, int l,
    const std::function<bool(const std::vector<Vertex>&, const std::vector<int>&)>& keep);

// keeps root plus nodes whose tuple is a connected tuple rooted at `part`
bool connected_rooted_at(const std::vector<Vertex>& tuple, int part, int l,
                         const std::function<int(Vertex)>& part_of, const DistanceOracle& dist);

MorphismTree restrict_to_root(const MorphismTree& t, int part, int l,
                              const std::function<int(Vertex)>& part_of,
                              const DistanceOracle& dist);

// Shuffle of part-rooted trees dropping every node in which some entry's
// local root differs from that entry's tree root part. `audit` re-checks
// that input nodes are connected tuples rooted at their declared part.
MorphismTree pruned_shuffle(const std::vector<RootedTree>& inputs, int l,
                            const std::function<int(Vertex)>& part_of, const DistanceOracle& dist,
                            bool audit = true);

}  // namespace tww
