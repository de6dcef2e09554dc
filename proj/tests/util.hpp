#pragma once

// Shared helpers for the test binaries: seeded generators, the small-graph
// enumeration used by the oracle sweeps, and a handful of reference graphs.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tww/exact.hpp"
#include "tww/trigraph.hpp"

namespace twwtest {

using tww::ContractionSequence;
using tww::ContractionStep;
using tww::EdgeColor;
using tww::Trigraph;
using tww::Vertex;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline Trigraph random_graph(int n, double p, std::mt19937_64& gen) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v)
            if (coin(gen)) edges.emplace_back(u, v);
    return Trigraph::from_edges(n, edges);
}

inline Trigraph random_tree(int n, std::mt19937_64& gen) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> pick(1, v - 1);
        edges.emplace_back(pick(gen), v);
    }
    return Trigraph::from_edges(n, edges);
}

// Random cograph on 1..n: recursive split, each internal node a union or join.
inline void cograph_edges(int lo, int hi, std::mt19937_64& gen,
                          std::vector<std::pair<Vertex, Vertex>>& edges) {
    if (lo >= hi) return;
    std::uniform_int_distribution<int> cut(lo, hi - 1);
    int mid = cut(gen);
    bool join = std::bernoulli_distribution(0.5)(gen);
    if (join)
        for (int u = lo; u <= mid; ++u)
            for (int v = mid + 1; v <= hi; ++v) edges.emplace_back(u, v);
    cograph_edges(lo, mid, gen, edges);
    cograph_edges(mid + 1, hi, gen, edges);
}

inline Trigraph random_cograph(int n, std::mt19937_64& gen) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    cograph_edges(1, n, gen, edges);
    return Trigraph::from_edges(n, edges);
}

inline Trigraph path_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
    return Trigraph::from_edges(n, edges);
}

inline Trigraph cycle_graph(int n) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
    if (n >= 3) edges.emplace_back(1, n);
    return Trigraph::from_edges(n, edges);
}

// Left fold of the black path 1-2-...-n: merge the growing prefix blob into
// the next path vertex. Every intermediate trigraph has at most one red edge.
inline ContractionSequence path_fold(int n) {
    ContractionSequence seq;
    seq.initial = path_graph(n);
    Vertex blob = 1;
    for (int k = 2; k <= n; ++k) {
        Vertex w = n + k - 1;
        seq.steps.push_back({blob, k, w});
        blob = w;
    }
    return seq;
}

inline std::set<std::pair<Vertex, Vertex>> edge_set(const Trigraph& g, EdgeColor color) {
    std::set<std::pair<Vertex, Vertex>> out;
    for (Vertex v : g.vertices())
        for (auto& [u, c] : g.neighbors(v))
            if (u > v && c == color) out.emplace(v, u);
    return out;
}

inline std::vector<Trigraph> all_labeled_graphs(int n) {
    std::vector<std::pair<Vertex, Vertex>> slots;
    for (int u = 1; u <= n; ++u)
        for (int v = u + 1; v <= n; ++v) slots.emplace_back(u, v);
    std::vector<Trigraph> out;
    out.reserve(1u << slots.size());
    for (std::uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (size_t i = 0; i < slots.size(); ++i)
            if (mask >> i & 1) edges.push_back(slots[i]);
        out.push_back(Trigraph::from_edges(n, edges));
    }
    return out;
}

// One representative per isomorphism class, deduplicated by canonical_code.
// Known class counts for n = 1..6: 1, 2, 4, 11, 34, 156.
inline std::vector<Trigraph> nonisomorphic_graphs(int n) {
    std::map<std::vector<int>, Trigraph> reps;
    for (auto& g : all_labeled_graphs(n)) reps.try_emplace(tww::canonical_code(g), g);
    std::vector<Trigraph> out;
    for (auto& [code, g] : reps) out.push_back(g);
    return out;
}

// Exact BFS distances on a symmetric adjacency map; unreachable pairs get a
// large sentinel. Usable directly as a part-distance oracle.
struct BfsOracle {
    std::map<int, std::set<int>> adj;

    static constexpr int kFar = 1 << 20;

    void add_edge(int a, int b) {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    void add_node(int a) { adj[a]; }

    int operator()(int a, int b) const {
        if (a == b) return 0;
        std::map<int, int> dist{{a, 0}};
        std::queue<int> bfs;
        bfs.push(a);
        while (!bfs.empty()) {
            int x = bfs.front();
            bfs.pop();
            auto it = adj.find(x);
            if (it == adj.end()) continue;
            for (int y : it->second)
                if (!dist.count(y)) {
                    dist[y] = dist[x] + 1;
                    if (y == b) return dist[y];
                    bfs.push(y);
                }
        }
        return kFar;
    }
};

// The red part graph of `g` under the partition that maps each vertex to a
// part id, using the original adjacency: parts are red iff not homogeneous.
inline BfsOracle part_distance_oracle(const Trigraph& g, const std::map<Vertex, int>& part_of) {
    std::map<int, std::set<Vertex>> members;
    for (auto& [v, p] : part_of) members[p].insert(v);
    BfsOracle oracle;
    for (auto& [p, vs] : members) oracle.add_node(p);
    for (auto it = members.begin(); it != members.end(); ++it)
        for (auto jt = std::next(it); jt != members.end(); ++jt)
            if (!tww::homogeneous(g, it->second, jt->second)) oracle.add_edge(it->first, jt->first);
    return oracle;
}

// Sentence over the single relation E: random quantifier prefix and a random
// boolean body over E/equality atoms on the bound variables.
inline std::string random_sentence(int l, std::mt19937_64& gen) {
    std::uniform_int_distribution<int> coin(0, 1);
    std::ostringstream out;
    for (int i = 1; i <= l; ++i) out << (coin(gen) ? "E" : "A") << " x" << i << " ";
    std::uniform_int_distribution<int> var(1, l);
    std::function<std::string(int)> body = [&](int budget) -> std::string {
        std::uniform_int_distribution<int> kind(0, budget > 0 ? 4 : 1);
        int a = var(gen), b = var(gen);
        switch (kind(gen)) {
            case 0:
                return "E(x" + std::to_string(a) + ",x" + std::to_string(b) + ")";
            case 1:
                return "x" + std::to_string(a) + "=x" + std::to_string(b);
            case 2:
                return "!(" + body(budget - 1) + ")";
            case 3:
                return "(" + body(budget - 1) + " & " + body(budget - 1) + ")";
            default:
                return "(" + body(budget - 1) + " | " + body(budget - 1) + ")";
        }
    };
    out << body(2);
    return out.str();
}

// Fixed battery of depth <= 2 sentence shapes over E, quantifiers filled in
// by the caller's loop.
inline std::vector<std::string> sentence_bodies_two_vars() {
    return {
        "E(x1,x2)",
        "E(x2,x1)",
        "x1=x2",
        "(E(x1,x2) & !(x1=x2))",
        "(E(x1,x2) | E(x2,x1))",
        "(!(E(x1,x2)) & !(x1=x2))",
        "(x1=x2 | E(x2,x1))",
        "!(E(x1,x2) & E(x2,x1))",
    };
}

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// The seven-vertex width-2 worked example used across the suite: graph on
// a..g = 1..7 and the six merges taking it to a single vertex.
inline ContractionSequence seven_vertex_example() {
    ContractionSequence seq;
    seq.initial = Trigraph::from_edges(7, {{1, 2},
                                           {1, 4},
                                           {1, 6},
                                           {2, 3},
                                           {2, 4},
                                           {2, 5},
                                           {2, 6},
                                           {3, 5},
                                           {3, 6},
                                           {4, 5},
                                           {4, 7},
                                           {5, 7},
                                           {6, 7}});
    seq.steps = {{5, 6, 8}, {1, 4, 9}, {2, 8, 10}, {9, 7, 11}, {3, 10, 12}, {11, 12, 13}};
    return seq;
}

}  // namespace twwtest
