#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tww/trigraph.hpp"

namespace tww {

// Relational structure on domain {1..n} with named binary relations (sets of
// ordered pairs, loops allowed) and named unary relations (vertex subsets).
struct BinaryStructure {
    int n = 0;
    std::vector<std::pair<std::string, std::set<std::pair<Vertex, Vertex>>>> relations;
    std::vector<std::pair<std::string, std::set<Vertex>>> unary;

    // Throws std::invalid_argument when a pair leaves the domain or a name repeats.
    void validate() const;

    bool has_pair(int relation_index, Vertex u, Vertex v) const;
    int relation_index(const std::string& name) const;  // -1 when absent
    int unary_index(const std::string& name) const;     // -1 when absent

    // Bitmask of unary memberships of v, bit i = unary[i].
    unsigned unary_signature(Vertex v) const;

    // Symmetric relation "E" from the black edges; red edges are rejected.
    static BinaryStructure from_graph(const Trigraph& g);
};

// Per relation E: one cross pair of A x B in E implies all of A x B in E,
// checked for both orientations independently.
bool homogeneous(const BinaryStructure& s, const std::set<Vertex>& a, const std::set<Vertex>& b);

}  // namespace tww
