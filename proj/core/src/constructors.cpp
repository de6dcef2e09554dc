#include "tww/constructors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace tww {

void DecompositionTree::validate(const std::set<Vertex>& domain) const {
    if (domain.empty()) throw std::invalid_argument("decomposition tree: empty vertex set");
    std::set<int> visited;
    std::set<Vertex> labels;
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (!visited.insert(x).second)
            throw std::invalid_argument("decomposition tree: node revisited");
        bool internal = children.count(x) > 0;
        bool leaf = leaf_label.count(x) > 0;
        if (internal == leaf)
            throw std::invalid_argument("decomposition tree: node must be internal xor leaf");
        if (internal) {
            stack.push_back(children.at(x).first);
            stack.push_back(children.at(x).second);
        } else if (!labels.insert(leaf_label.at(x)).second) {
            throw std::invalid_argument("decomposition tree: duplicate leaf label");
        }
    }
    if (visited.size() != children.size() + leaf_label.size())
        throw std::invalid_argument("decomposition tree: unreachable nodes");
    if (labels != domain)
        throw std::invalid_argument("decomposition tree: leaf labels do not match vertex set");
    if (domain.size() >= 2 && children.count(root) == 0)
        throw std::invalid_argument("decomposition tree: root must have two children");
}

std::vector<Vertex> DecompositionTree::leaves_below(int node) const {
    std::vector<Vertex> out;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        auto it = children.find(x);
        if (it == children.end()) {
            out.push_back(leaf_label.at(x));
        } else {
            stack.push_back(it->second.second);
            stack.push_back(it->second.first);
        }
    }
    return out;
}

namespace {

void require_plain(const Trigraph& g, const char* who) {
    if (g.edge_count(EdgeColor::Red) != 0)
        throw std::invalid_argument(std::string(who) + ": input graph has red edges");
}

// Distinct unions of cross neighborhoods, counted by closing single-vertex
// traces under union; false as soon as the family exceeds `limit`.
bool trace_count_within(const Trigraph& g, const std::vector<Vertex>& side,
                        const std::vector<Vertex>& other, std::size_t limit) {
    std::map<Vertex, int> pos;
    for (size_t i = 0; i < other.size(); ++i) pos[other[i]] = static_cast<int>(i);
    size_t words = (other.size() + 63) / 64;
    if (words == 0) words = 1;

    std::vector<std::vector<std::uint64_t>> bases;
    for (Vertex v : side) {
        std::vector<std::uint64_t> bits(words, 0);
        for (auto& [u, c] : g.neighbors(v)) {
            auto it = pos.find(u);
            if (it != pos.end() && c == EdgeColor::Black)
                bits[it->second / 64] |= std::uint64_t{1} << (it->second % 64);
        }
        bases.push_back(std::move(bits));
    }

    std::set<std::vector<std::uint64_t>> family;
    family.insert(std::vector<std::uint64_t>(words, 0));
    std::vector<std::vector<std::uint64_t>> queue(family.begin(), family.end());
    while (!queue.empty()) {
        auto cur = std::move(queue.back());
        queue.pop_back();
        for (auto& b : bases) {
            std::vector<std::uint64_t> u(words);
            for (size_t w = 0; w < words; ++w) u[w] = cur[w] | b[w];
            if (family.insert(u).second) {
                if (family.size() > limit) return false;
                queue.push_back(std::move(u));
            }
        }
    }
    return true;
}

}  // namespace

bool boolean_width_at_most(const Trigraph& g, const DecompositionTree& t, int k) {
    if (k < 0 || k > 8) throw std::invalid_argument("boolean-width check supports 0 <= k <= 8");
    require_plain(g, "boolean_width_at_most");
    auto verts = g.vertices();
    t.validate(std::set<Vertex>(verts.begin(), verts.end()));

    std::size_t limit = std::size_t{1} << k;
    std::vector<int> nodes;
    for (auto& [x, _] : t.children) nodes.push_back(x);
    for (auto& [x, _] : t.leaf_label) nodes.push_back(x);
    for (int x : nodes) {
        if (x == t.root) continue;
        auto below = t.leaves_below(x);
        std::set<Vertex> below_set(below.begin(), below.end());
        std::vector<Vertex> rest;
        for (Vertex v : verts)
            if (!below_set.count(v)) rest.push_back(v);
        if (rest.empty()) continue;
        if (!trace_count_within(g, below, rest, limit)) return false;
        if (!trace_count_within(g, rest, below, limit)) return false;
    }
    return true;
}

namespace {

struct MutableTree {
    int root;
    std::map<int, std::pair<int, int>> children;
    std::map<int, Vertex> leaf_label;

    int parent_of(int node) const {
        for (auto& [p, kids] : children)
            if (kids.first == node || kids.second == node) return p;
        return 0;
    }

    int leaf_of(Vertex label) const {
        for (auto& [node, l] : leaf_label)
            if (l == label) return node;
        throw std::logic_error("leaf label not found");
    }

    std::vector<Vertex> leaves_below(int node) const {
        DecompositionTree t;
        t.root = node;
        t.children = children;
        t.leaf_label = leaf_label;
        return t.leaves_below(node);
    }

    // removes the leaf and splices its parent away
    void drop_leaf(Vertex label) {
        int node = leaf_of(label);
        leaf_label.erase(node);
        int p = parent_of(node);
        if (p == 0) throw std::logic_error("cannot drop the root leaf");
        auto [a, b] = children.at(p);
        int sibling = a == node ? b : a;
        children.erase(p);
        int gp = parent_of(p);
        if (gp == 0) {
            root = sibling;
        } else {
            auto& kids = children.at(gp);
            (kids.first == p ? kids.first : kids.second) = sibling;
        }
    }
};

}  // namespace

ContractionSequence boolw_sequence(const Trigraph& g, const DecompositionTree& t, int k) {
    require_plain(g, "boolw_sequence");
    if (!boolean_width_at_most(g, t, k))
        throw std::invalid_argument("boolean-width certificate failed");
    auto verts = g.vertices();
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i)
        if (verts[i] != i + 1)
            throw std::invalid_argument("boolw_sequence requires vertex ids 1..n");

    ContractionSequence seq;
    seq.initial = g;
    Trigraph cur = g;
    MutableTree tree{t.root, t.children, t.leaf_label};
    const int small = (1 << k) + 1;
    int step = 0;

    while (cur.vertex_count() > 1) {
        auto ids = cur.vertices();
        if (cur.vertex_count() <= small) {
            ++step;
            seq.steps.push_back({ids[0], ids[1], n + step});
            cur.contract_in_place(ids[0], ids[1], n + step);
            continue;
        }

        int node = tree.root;
        while (static_cast<int>(tree.leaves_below(node).size()) > (2 << k)) {
            auto [c1, c2] = tree.children.at(node);
            size_t s1 = tree.leaves_below(c1).size();
            size_t s2 = tree.leaves_below(c2).size();
            node = s1 >= s2 ? c1 : c2;
        }

        auto inside = tree.leaves_below(node);
        std::set<Vertex> inside_set(inside.begin(), inside.end());
        std::vector<Vertex> outside;
        for (Vertex v : ids)
            if (!inside_set.count(v)) outside.push_back(v);

        // black traces on the outside; red must never cross the cut
        std::map<std::vector<Vertex>, std::vector<Vertex>> by_trace;
        for (Vertex v : inside_set) {
            std::vector<Vertex> trace;
            for (auto& [u, c] : cur.neighbors(v)) {
                if (inside_set.count(u)) continue;
                if (c == EdgeColor::Red) throw std::logic_error("red edge crosses the chosen cut");
                trace.push_back(u);
            }
            by_trace[trace].push_back(v);
        }

        std::pair<Vertex, Vertex> best{0, 0};
        for (auto& [_, group] : by_trace) {
            if (group.size() < 2) continue;
            std::pair<Vertex, Vertex> cand{group[0], group[1]};
            if (best.first == 0 || cand < best) best = cand;
        }
        if (best.first == 0) throw std::logic_error("no equal-trace leaf pair below the subtree");

        ++step;
        Vertex w = n + step;
        seq.steps.push_back({best.first, best.second, w});
        cur.contract_in_place(best.first, best.second, w);
        tree.leaf_label[tree.leaf_of(best.first)] = w;
        tree.drop_leaf(best.second);
    }
    return seq;
}

namespace {

long long checked_lattice_size(int d, long long n) {
    if (d < 1 || n < 1) throw std::invalid_argument("lattice needs d >= 1 and n >= 1");
    long long total = 1;
    for (int p = 0; p < d; ++p) {
        total *= n;
        if (total > 10'000'000) throw CapError("lattice size exceeds the supported scale");
    }
    return total;
}

struct LatticeSchedule {
    long long base = 0;  // initial tokens are 1..base; merge j creates base+j+1
    std::vector<std::pair<long long, long long>> merges;
    long long root = 0;
};

LatticeSchedule lattice_schedule(int d, long long n) {
    LatticeSchedule out;
    out.base = checked_lattice_size(d, n);
    auto emit = [&out](long long a, long long b) {
        out.merges.emplace_back(a, b);
        return out.base + static_cast<long long>(out.merges.size());
    };

    if (d == 1) {
        long long cur = 1;
        for (long long v = 2; v <= n; ++v) cur = emit(cur, v);
        out.root = cur;
        return out;
    }

    LatticeSchedule sub = lattice_schedule(d - 1, n);
    const long long layer = sub.base;
    std::vector<std::unordered_map<long long, long long>> tau(static_cast<size_t>(n) + 1);
    auto big_of = [&](long long i, long long t) {
        return t <= layer ? (i - 1) * layer + t : tau[static_cast<size_t>(i)].at(t);
    };

    // each lower-dimensional step runs in every layer before the next one
    for (size_t s = 0; s < sub.merges.size(); ++s) {
        long long sw = layer + static_cast<long long>(s) + 1;
        for (long long i = 1; i <= n; ++i) {
            long long w = emit(big_of(i, sub.merges[s].first), big_of(i, sub.merges[s].second));
            tau[static_cast<size_t>(i)][sw] = w;
        }
    }
    long long cur = big_of(1, sub.root);
    for (long long i = 2; i <= n; ++i) cur = emit(cur, big_of(i, sub.root));
    out.root = cur;
    return out;
}

// Replays the full-lattice collapse on the occupied points only: steps with
// one empty side alias the survivor, steps with two occupied sides contract.
void replay_lattice_collapse(int d, long long n, std::unordered_map<long long, Vertex> rep,
                             int base_n, int& step, std::vector<ContractionStep>& steps) {
    LatticeSchedule sched = lattice_schedule(d, n);
    for (size_t j = 0; j < sched.merges.size(); ++j) {
        long long token = sched.base + static_cast<long long>(j) + 1;
        auto ia = rep.find(sched.merges[j].first);
        auto ib = rep.find(sched.merges[j].second);
        if (ia != rep.end() && ib != rep.end()) {
            ++step;
            Vertex w = base_n + step;
            steps.push_back({ia->second, ib->second, w});
            rep[token] = w;
        } else if (ia != rep.end()) {
            rep[token] = ia->second;
        } else if (ib != rep.end()) {
            rep[token] = ib->second;
        }
    }
}

}  // namespace

Trigraph red_grid(int d, int n) {
    long long total = checked_lattice_size(d, n);
    Trigraph g;
    for (long long v = 1; v <= total; ++v) g.add_vertex(static_cast<Vertex>(v));
    long long stride = 1;
    for (int p = 0; p < d; ++p) {
        for (long long v = 1; v <= total; ++v) {
            long long coord = ((v - 1) / stride) % n + 1;
            if (coord < n)
                g.set_edge(static_cast<Vertex>(v), static_cast<Vertex>(v + stride), EdgeColor::Red);
        }
        stride *= n;
    }
    return g;
}

ContractionSequence grid_sequence(int d, int n) {
    ContractionSequence seq;
    seq.initial = red_grid(d, n);
    LatticeSchedule sched = lattice_schedule(d, n);
    for (size_t j = 0; j < sched.merges.size(); ++j)
        seq.steps.push_back({static_cast<Vertex>(sched.merges[j].first),
                             static_cast<Vertex>(sched.merges[j].second),
                             static_cast<Vertex>(sched.base + j + 1)});
    return seq;
}

ContractionSequence kings_sequence(const std::vector<std::vector<int>>& raw) {
    if (raw.empty()) throw std::invalid_argument("kings_sequence: no points");
    const int d = static_cast<int>(raw[0].size());
    if (d < 1) throw std::invalid_argument("kings_sequence: dimension must be >= 1");
    for (auto& p : raw)
        if (static_cast<int>(p.size()) != d)
            throw std::invalid_argument("kings_sequence: inconsistent dimensions");

    // translate each axis to start at 1; the schedule is translation invariant
    // and the enclosing lattice stays as small as possible
    std::vector<std::vector<int>> points = raw;
    long long n = 1;
    for (int p = 0; p < d; ++p) {
        int lo = points[0][p];
        for (auto& x : points) lo = std::min(lo, x[p]);
        for (auto& x : points) {
            x[p] -= lo - 1;
            n = std::max(n, static_cast<long long>(x[p]));
        }
    }
    checked_lattice_size(d, n);

    const int m = static_cast<int>(points.size());
    ContractionSequence seq;
    for (Vertex v = 1; v <= m; ++v) seq.initial.add_vertex(v);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            int cheb = 0;
            for (int p = 0; p < d; ++p) cheb = std::max(cheb, std::abs(points[i][p] - points[j][p]));
            if (cheb == 0) throw std::invalid_argument("kings_sequence: duplicate point");
            if (cheb == 1) seq.initial.set_edge(i + 1, j + 1, EdgeColor::Red);
        }
    }

    std::unordered_map<long long, Vertex> rep;
    for (int i = 0; i < m; ++i) {
        long long id = 1, stride = 1;
        for (int p = 0; p < d; ++p) {
            id += (points[i][p] - 1) * stride;
            stride *= n;
        }
        rep[id] = i + 1;
    }
    int step = 0;
    replay_lattice_collapse(d, n, std::move(rep), m, step, seq.steps);
    return seq;
}

namespace {

// half-open cells of side 2/sqrt(d), anchored at the per-axis minimum
std::vector<std::vector<int>> ball_cells(const BallConfiguration& c) {
    const double spacing = 2.0 / std::sqrt(static_cast<double>(c.d));
    std::vector<double> mins(c.d);
    for (int p = 0; p < c.d; ++p) {
        mins[p] = c.centers[0][p];
        for (auto& x : c.centers) mins[p] = std::min(mins[p], x[p]);
    }
    std::vector<std::vector<int>> cells;
    for (auto& x : c.centers) {
        std::vector<int> cell(c.d);
        for (int p = 0; p < c.d; ++p)
            cell[p] = static_cast<int>(std::floor((x[p] - mins[p]) / spacing));
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace

int unit_ball_occupancy(const BallConfiguration& c) {
    if (c.d < 1) throw std::invalid_argument("unit_ball_occupancy: dimension must be >= 1");
    if (c.centers.empty()) throw std::invalid_argument("unit_ball_occupancy: no centers");
    for (auto& x : c.centers)
        if (static_cast<int>(x.size()) != c.d)
            throw std::invalid_argument("unit_ball_occupancy: inconsistent center dimension");
    std::map<std::vector<int>, int> count;
    int best = 0;
    for (auto& cell : ball_cells(c)) best = std::max(best, ++count[cell]);
    return best;
}

ContractionSequence unit_ball_sequence(const BallConfiguration& c, const Trigraph& g) {
    if (c.d < 1) throw std::invalid_argument("unit_ball_sequence: dimension must be >= 1");
    const int m = static_cast<int>(c.centers.size());
    if (m == 0) throw std::invalid_argument("unit_ball_sequence: no centers");
    for (auto& x : c.centers)
        if (static_cast<int>(x.size()) != c.d)
            throw std::invalid_argument("unit_ball_sequence: inconsistent center dimension");
    auto verts = g.vertices();
    if (static_cast<int>(verts.size()) != m)
        throw std::invalid_argument("unit_ball_sequence: vertex/center count mismatch");
    for (int i = 0; i < m; ++i)
        if (verts[i] != i + 1)
            throw std::invalid_argument("unit_ball_sequence: vertex ids must be 1..n");
    require_plain(g, "unit_ball_sequence");

    std::string problems;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double dist2 = 0;
            for (int p = 0; p < c.d; ++p) {
                double diff = c.centers[i][p] - c.centers[j][p];
                dist2 += diff * diff;
            }
            bool expected = dist2 <= 4.0 + 1e-9;
            bool actual = g.has_edge(i + 1, j + 1);
            if (expected != actual)
                problems += (actual ? "edge " : "non-edge ") + std::to_string(i + 1) + "-" +
                            std::to_string(j + 1) + " contradicts center distance; ";
        }
    }
    if (!problems.empty())
        throw std::invalid_argument("graph inconsistent with ball centers: " + problems);

    ContractionSequence seq;
    seq.initial = g;
    int step = 0;
    if (g.edge_count(EdgeColor::Black) == 0) {
        Trigraph cur = g;
        while (cur.vertex_count() > 1) {
            auto ids = cur.vertices();
            ++step;
            seq.steps.push_back({ids[0], ids[1], m + step});
            cur.contract_in_place(ids[0], ids[1], m + step);
        }
        return seq;
    }

    const int q = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c.d))));
    std::map<std::vector<int>, std::vector<Vertex>> supercells;  // row-major via map order
    long long n_super = 1;
    auto cells = ball_cells(c);
    for (int i = 0; i < m; ++i) {
        std::vector<int> super(c.d);
        for (int p = 0; p < c.d; ++p) {
            super[p] = cells[i][p] / q;
            n_super = std::max(n_super, static_cast<long long>(super[p]) + 1);
        }
        supercells[super].push_back(i + 1);
    }

    // phase 1: collapse every supercell in insertion order
    std::unordered_map<long long, Vertex> rep;
    for (auto& [super, members] : supercells) {
        Vertex cur = members[0];
        for (size_t i = 1; i < members.size(); ++i) {
            ++step;
            seq.steps.push_back({cur, members[i], m + step});
            cur = m + step;
        }
        long long id = 1, stride = 1;
        for (int p = 0; p < c.d; ++p) {
            id += super[p] * stride;
            stride *= n_super;
        }
        rep[id] = cur;
    }

    // phase 2: kings schedule on the supercell lattice
    replay_lattice_collapse(c.d, n_super, std::move(rep), m, step, seq.steps);
    return seq;
}

void Poset::validate() const {
    std::vector<std::set<int>> out(n + 1);
    for (auto [x, y] : less) {
        if (x < 1 || x > n || y < 1 || y > n)
            throw std::invalid_argument("poset relation leaves the domain");
        if (x == y) throw std::invalid_argument("poset relation is not irreflexive");
        if (less.count({y, x})) throw std::invalid_argument("poset relation is not antisymmetric");
        out[x].insert(y);
    }
    for (auto [x, y] : less)
        for (int z : out[y])
            if (!less.count({x, z}))
                throw std::invalid_argument("poset relation is not transitive");
}

Poset Poset::from_arcs(int n, const std::vector<std::pair<int, int>>& arcs,
                       bool transitive_closure) {
    Poset p;
    p.n = n;
    if (!transitive_closure) {
        p.less.insert(arcs.begin(), arcs.end());
    } else {
        std::vector<std::set<int>> out(n + 1);
        for (auto [x, y] : arcs) {
            if (x < 1 || x > n || y < 1 || y > n)
                throw std::invalid_argument("poset arc leaves the domain");
            out[x].insert(y);
        }
        for (int x = 1; x <= n; ++x) {
            // depth-first reachability by arcs of length >= 1
            std::vector<int> stack(out[x].begin(), out[x].end());
            std::set<int> seen;
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                if (!seen.insert(y).second) continue;
                p.less.insert({x, y});
                for (int z : out[y]) stack.push_back(z);
            }
        }
    }
    p.validate();
    return p;
}

PosetOrderResult poset_order(const Poset& p) {
    p.validate();
    const int n = p.n;

    // maximum bipartite matching on the comparability split graph
    std::vector<int> match_left(n + 1, 0), match_right(n + 1, 0);
    std::vector<char> used;
    auto augment = [&](auto&& self, int x) -> bool {
        for (int y = 1; y <= n; ++y) {
            if (used[y] || !p.less.count({x, y})) continue;
            used[y] = 1;
            if (match_right[y] == 0 || self(self, match_right[y])) {
                match_left[x] = y;
                match_right[y] = x;
                return true;
            }
        }
        return false;
    };
    for (int x = 1; x <= n; ++x) {
        used.assign(n + 1, 0);
        augment(augment, x);
    }

    PosetOrderResult res;
    for (int v = 1; v <= n; ++v) {
        if (match_right[v] != 0) continue;  // not a chain head
        std::vector<Vertex> chain;
        for (int x = v; x != 0; x = match_left[x]) chain.push_back(x);
        res.chains.push_back(std::move(chain));
    }
    std::sort(res.chains.begin(), res.chains.end(), [](const auto& a, const auto& b) {
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    for (auto& chain : res.chains) res.order.insert(res.order.end(), chain.begin(), chain.end());
    res.width = static_cast<int>(res.chains.size());
    return res;
}

int max_antichain(const Poset& p, int cap) {
    if (p.n > cap) throw CapError("antichain search capped at n = " + std::to_string(cap));
    p.validate();
    const int n = p.n;
    std::vector<char> anti(std::size_t{1} << n, 1);
    int best = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        int v = std::countr_zero(mask);
        std::size_t rest = mask & (mask - 1);
        bool ok = anti[rest];
        for (int u = 0; ok && u < n; ++u) {
            if (!(rest >> u & 1)) continue;
            if (p.less.count({v + 1, u + 1}) || p.less.count({u + 1, v + 1})) ok = false;
        }
        anti[mask] = ok;
        if (ok) best = std::max(best, std::popcount(mask));
    }
    return best;
}

BinaryStructure poset_structure(const Poset& p) {
    p.validate();
    BinaryStructure s;
    s.n = p.n;
    // strict relation: keeps the encoded diagonal 0, so an antichain encodes
    // to a non-mixed all-zero matrix
    s.relations.emplace_back("lt", p.less);
    return s;
}

namespace {

void require_permutation(const std::vector<int>& tau) {
    const int n = static_cast<int>(tau.size());
    std::vector<char> seen(n + 1, 0);
    for (int v : tau) {
        if (v < 1 || v > n || seen[v]) throw std::invalid_argument("not a permutation of 1..n");
        seen[v] = 1;
    }
}

}  // namespace

PermutationStructureResult permutation_structure(const std::vector<int>& tau) {
    require_permutation(tau);
    const int n = static_cast<int>(tau.size());
    PermutationStructureResult res;
    res.structure.n = 2 * n;

    std::set<std::pair<Vertex, Vertex>> o1, o2, link;
    for (int x = 1; x <= n; ++x) {
        for (int y = 1; y <= x; ++y) {
            o1.insert({x, y});
            o2.insert({n + x, n + y});
        }
        link.insert({x, n + tau[x - 1]});
        link.insert({n + tau[x - 1], x});
    }
    res.structure.relations.emplace_back("O1", std::move(o1));
    res.structure.relations.emplace_back("O2", std::move(o2));
    res.structure.relations.emplace_back("M", std::move(link));
    for (Vertex v = 1; v <= 2 * n; ++v) res.order.push_back(v);
    return res;
}

AlphabetMatrix permutation_matrix(const std::vector<int>& tau) {
    require_permutation(tau);
    const int n = static_cast<int>(tau.size());
    AlphabetMatrix m = AlphabetMatrix::zero_one(n, n);
    int one = m.code_of("1");
    for (int j = 1; j <= n; ++j) m.set(tau[j - 1], j, one);
    return m;
}

bool contains_pattern(const std::vector<int>& tau, const std::vector<int>& sigma) {
    require_permutation(tau);
    require_permutation(sigma);
    const int n = static_cast<int>(tau.size());
    const int k = static_cast<int>(sigma.size());
    if (k > n) return false;

    std::vector<int> chosen;
    auto search = [&](auto&& self, int from) -> bool {
        int a = static_cast<int>(chosen.size());
        if (a == k) return true;
        for (int p = from; p <= n - (k - a - 1); ++p) {
            bool ok = true;
            for (int b = 0; b < a && ok; ++b)
                ok = (tau[chosen[b] - 1] < tau[p - 1]) == (sigma[b] < sigma[a]);
            if (!ok) continue;
            chosen.push_back(p);
            if (self(self, p + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    return search(search, 1);
}

bool matrix_contains_pattern(const std::vector<int>& tau, const std::vector<int>& sigma) {
    AlphabetMatrix big = permutation_matrix(tau);
    AlphabetMatrix pat = permutation_matrix(sigma);
    const int n = big.cols(), k = pat.cols();
    if (k > n) return false;

    std::vector<int> cols;
    auto feasible = [&]() {
        // rows hit by the chosen columns, sorted ascending
        std::vector<int> rows;
        for (int j : cols)
            for (int i = 1; i <= n; ++i)
                if (big.symbol_at(i, j) == "1") rows.push_back(i);
        std::sort(rows.begin(), rows.end());
        for (int b = 0; b < static_cast<int>(cols.size()); ++b) {
            for (int a = 0; a < static_cast<int>(rows.size()); ++a) {
                if (pat.symbol_at(a + 1, b + 1) == "1" && big.symbol_at(rows[a], cols[b]) != "1")
                    return false;
            }
        }
        return true;
    };
    auto search = [&](auto&& self, int from) -> bool {
        if (static_cast<int>(cols.size()) == k) return feasible();
        for (int j = from; j <= n - (k - static_cast<int>(cols.size()) - 1); ++j) {
            cols.push_back(j);
            if (self(self, j + 1)) return true;
            cols.pop_back();
        }
        return false;
    };
    return search(search, 1);
}

std::vector<Vertex> lexdfs_order(const Trigraph& g, std::vector<LexDfsStep>* audit) {
    require_plain(g, "lexdfs_order");
    std::vector<Vertex> sigma;
    std::set<Vertex> discovered;
    auto verts = g.vertices();

    auto component_of = [&](Vertex start, const std::set<Vertex>& blocked) {
        std::set<Vertex> comp{start};
        std::vector<Vertex> stack{start};
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (auto& [u, _] : g.neighbors(v))
                if (!blocked.count(u) && comp.insert(u).second) stack.push_back(u);
        }
        return comp;
    };

    for (Vertex v0 : verts) {
        if (discovered.count(v0)) continue;
        std::set<Vertex> comp = component_of(v0, discovered);
        std::vector<Vertex> disc{v0};
        discovered.insert(v0);

        while (disc.size() < comp.size()) {
            Vertex active = 0;
            for (auto it = disc.rbegin(); it != disc.rend() && active == 0; ++it)
                for (auto& [u, _] : g.neighbors(*it))
                    if (comp.count(u) && !discovered.count(u)) {
                        active = *it;
                        break;
                    }
            if (active == 0) throw std::logic_error("no active vertex in an unfinished component");

            // components of the undiscovered rest that touch N(active)
            std::set<Vertex> seen;
            std::vector<std::pair<std::vector<int>, std::vector<Vertex>>> candidates;
            for (Vertex u : comp) {
                if (discovered.count(u) || seen.count(u)) continue;
                std::set<Vertex> part = component_of(u, discovered);
                seen.insert(part.begin(), part.end());
                bool touches = false;
                for (Vertex x : part)
                    if (g.has_edge(active, x)) {
                        touches = true;
                        break;
                    }
                if (!touches) continue;
                std::vector<int> word(disc.size(), 0);
                for (size_t p = 0; p < disc.size(); ++p)
                    for (Vertex x : part)
                        if (g.has_edge(disc[p], x)) {
                            word[p] = 1;
                            break;
                        }
                candidates.emplace_back(std::move(word), std::vector<Vertex>(part.begin(), part.end()));
            }
            if (candidates.empty()) throw std::logic_error("active vertex has no candidate component");
            std::sort(candidates.begin(), candidates.end(),
                      [](const auto& a, const auto& b) { return a.second.front() < b.second.front(); });

            std::vector<int> best_word;
            for (auto& [word, _] : candidates) best_word = std::max(best_word, word);
            Vertex next = 0;
            for (auto& [word, members] : candidates) {
                if (word != best_word) continue;
                for (Vertex x : members)
                    if (g.has_edge(active, x) && (next == 0 || x < next)) next = x;
            }

            if (audit) audit->push_back({active, next, candidates});
            disc.push_back(next);
            discovered.insert(next);
        }
        sigma.insert(sigma.end(), disc.begin(), disc.end());
    }
    return sigma;
}

}  // namespace tww
