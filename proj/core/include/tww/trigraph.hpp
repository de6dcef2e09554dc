#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tww {

using Vertex = int;

enum class EdgeColor { Black, Red };

// Graph with two disjoint edge sets: black (certain) and red (error) edges.
// Vertex ids are arbitrary positive integers; merged vertices get fresh ids.
// Adjacency is kept in ordered maps so iteration order is deterministic.
class Trigraph {
  public:
    Trigraph() = default;

    // Plain graph on vertices 1..n with the given black edges.
    static Trigraph from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& black);

    void add_vertex(Vertex v);
    void remove_vertex(Vertex v);
    // Inserts or overwrites the edge u-v. Self-loops are rejected.
    void set_edge(Vertex u, Vertex v, EdgeColor color);

    bool has_vertex(Vertex v) const { return adj_.count(v) > 0; }
    bool has_edge(Vertex u, Vertex v) const;
    std::optional<EdgeColor> edge_color(Vertex u, Vertex v) const;

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    std::vector<Vertex> vertices() const;
    Vertex max_vertex_id() const;
    const std::map<Vertex, EdgeColor>& neighbors(Vertex v) const;

    long long edge_count(EdgeColor color) const;
    int red_degree(Vertex v) const;
    int max_red_degree() const;

    // Merges u and v into the fresh vertex w. For every other vertex x the
    // new edge w-x is black iff both u-x and v-x were black, absent iff both
    // were absent, red otherwise.
    void contract_in_place(Vertex u, Vertex v, Vertex w);
    Trigraph contract(Vertex u, Vertex v, Vertex w) const;

    // Swaps black edges and non-edges; red edges are kept.
    Trigraph complement() const;

    // Subgraph induced by `keep`, vertex ids preserved.
    Trigraph induced(const std::set<Vertex>& keep) const;

    bool operator==(const Trigraph& other) const { return adj_ == other.adj_; }

  private:
    std::map<Vertex, std::map<Vertex, EdgeColor>> adj_;
};

struct ContractionStep {
    Vertex u = 0;
    Vertex v = 0;
    Vertex w = 0;  // fresh id of the merged vertex
};

// A (possibly partial) contraction sequence together with its start trigraph.
// For a graph on 1..n written to disk, step k's merged id is n + k.
struct ContractionSequence {
    Trigraph initial;
    std::vector<ContractionStep> steps;
};

struct VerifyReport {
    bool valid = false;
    // Max red degree of the input trigraph, then after each step.
    std::vector<int> per_step_red_degree;
    int width = 0;
    int failed_step = -1;  // 0-based index of the offending step, -1 if none
    std::string message;
};

// Replays `seq` and checks that every intermediate trigraph (including the
// input) has red degree <= d. Pass d < 0 to only replay and report the width.
VerifyReport verify_sequence(const ContractionSequence& seq, int d);

// Vertex partition at one level of a sequence, with the red graph between
// parts. Part ids are the replayed trigraph's vertex ids at that level.
struct PartitionLevel {
    std::map<Vertex, std::vector<Vertex>> parts;               // part id -> sorted members
    std::vector<std::pair<Vertex, Vertex>> red_part_edges;     // non-homogeneous part pairs
};

struct PartitionView {
    std::vector<PartitionLevel> levels;  // finest partition first
};

// Levels P_n .. P_{n-k} for a k-step sequence. Intended for desk-scale use;
// each level stores a full copy of the partition.
PartitionView sequence_to_partitions(const ContractionSequence& seq);

// True iff A and B see each other homogeneously: no red edge across, and the
// black edges across are all-or-none.
bool homogeneous(const Trigraph& g, const std::set<Vertex>& a, const std::set<Vertex>& b);

// Restriction of `seq` to the induced subgraph on `keep`. The subgraph is
// relabeled 1..|keep| in increasing original-id order; steps whose two sides
// both meet `keep` survive, the rest vanish. Never increases the width.
ContractionSequence project_sequence(const ContractionSequence& seq, const std::set<Vertex>& keep);

// Leaf order of the contraction forest: vertices of the initial trigraph in
// the depth-first order that makes every merged part a contiguous interval.
std::vector<Vertex> twin_order(const ContractionSequence& seq);

}  // namespace tww
