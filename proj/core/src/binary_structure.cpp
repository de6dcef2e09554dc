#include "tww/binary_structure.hpp"

#include <stdexcept>

namespace tww {

void BinaryStructure::validate() const {
    if (n < 0) throw std::invalid_argument("negative domain size");
    std::set<std::string> names;
    for (auto& [name, pairs] : relations) {
        if (!names.insert("R:" + name).second)
            throw std::invalid_argument("duplicate relation name " + name);
        for (auto [u, v] : pairs)
            if (u < 1 || u > n || v < 1 || v > n)
                throw std::invalid_argument("relation " + name + " leaves the domain");
    }
    for (auto& [name, verts] : unary) {
        if (!names.insert("U:" + name).second)
            throw std::invalid_argument("duplicate unary name " + name);
        for (Vertex v : verts)
            if (v < 1 || v > n) throw std::invalid_argument("unary " + name + " leaves the domain");
    }
}

bool BinaryStructure::has_pair(int relation_index, Vertex u, Vertex v) const {
    return relations.at(relation_index).second.count({u, v}) > 0;
}

int BinaryStructure::relation_index(const std::string& name) const {
    for (size_t i = 0; i < relations.size(); ++i)
        if (relations[i].first == name) return static_cast<int>(i);
    return -1;
}

int BinaryStructure::unary_index(const std::string& name) const {
    for (size_t i = 0; i < unary.size(); ++i)
        if (unary[i].first == name) return static_cast<int>(i);
    return -1;
}

unsigned BinaryStructure::unary_signature(Vertex v) const {
    unsigned sig = 0;
    for (size_t i = 0; i < unary.size(); ++i)
        if (unary[i].second.count(v)) sig |= 1u << i;
    return sig;
}

BinaryStructure BinaryStructure::from_graph(const Trigraph& g) {
    BinaryStructure s;
    auto verts = g.vertices();
    s.n = static_cast<int>(verts.size());
    for (int i = 0; i < s.n; ++i)
        if (verts[i] != i + 1)
            throw std::invalid_argument("from_graph requires vertex ids 1..n");
    std::set<std::pair<Vertex, Vertex>> edges;
    for (Vertex v : verts) {
        for (auto& [u, c] : g.neighbors(v)) {
            if (c == EdgeColor::Red) throw std::invalid_argument("from_graph: red edge present");
            edges.insert({v, u});
            edges.insert({u, v});
        }
    }
    s.relations.emplace_back("E", std::move(edges));
    return s;
}

bool homogeneous(const BinaryStructure& s, const std::set<Vertex>& a, const std::set<Vertex>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("homogeneous: empty set");
    for (Vertex v : a)
        if (b.count(v)) throw std::invalid_argument("homogeneous: overlapping sets");

    for (auto& [_, pairs] : s.relations) {
        long long fwd = 0, bwd = 0;
        for (Vertex u : a) {
            for (Vertex v : b) {
                if (pairs.count({u, v})) ++fwd;
                if (pairs.count({v, u})) ++bwd;
            }
        }
        long long total = static_cast<long long>(a.size()) * static_cast<long long>(b.size());
        if (fwd != 0 && fwd != total) return false;
        if (bwd != 0 && bwd != total) return false;
    }
    return true;
}

}  // namespace tww
