#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "tww/morphism.hpp"
#include "util.hpp"

using namespace tww;
using namespace twwtest;

namespace {

std::vector<std::vector<Vertex>> tuple_multiset(const MorphismTree& t) {
    std::vector<std::vector<Vertex>> out;
    for (int i = 0; i < t.node_count(); ++i) out.push_back(t.tuple(i));
    std::sort(out.begin(), out.end());
    return out;
}

MorphismTree strip_origins(MorphismTree t) {
    for (auto& node : t.nodes) node.origin = -1;
    return t;
}

MorphismTree reversed_children(const MorphismTree& t) {
    MorphismTree out;
    out.nodes[0].origin = t.nodes[0].origin;
    std::vector<std::pair<int, int>> queue{{0, 0}};  // old node -> new node
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [on, nn] = queue[qi];
        std::vector<int> kids = t.nodes[on].children;
        std::reverse(kids.begin(), kids.end());
        for (int c : kids) {
            int id = out.node_count();
            out.nodes.push_back({nn, t.nodes[c].vertex, t.nodes[c].origin, {}});
            out.nodes[nn].children.push_back(id);
            queue.push_back({c, id});
        }
    }
    return out;
}

// Direct backtracking test for a subtree-swapping automorphism: profiles must
// match positionally and children must pair off recursively. The independent
// cross-check for the interned codes.
bool subtree_equiv(const MorphismTree& t, int a, int b, const ProfileContext& ctx) {
    if (node_profile(t, a, ctx) != node_profile(t, b, ctx)) return false;
    const auto& ca = t.nodes[a].children;
    const auto& cb = t.nodes[b].children;
    if (ca.size() != cb.size()) return false;
    std::vector<char> used(cb.size(), 0);
    std::function<bool(size_t)> match = [&](size_t i) -> bool {
        if (i == ca.size()) return true;
        for (size_t j = 0; j < cb.size(); ++j)
            if (!used[j] && subtree_equiv(t, ca[i], cb[j], ctx)) {
                used[j] = 1;
                if (match(i + 1)) return true;
                used[j] = 0;
            }
        return false;
    };
    return match(0);
}

MorphismTree random_tree(int max_depth, const std::vector<Vertex>& domain, int extra_nodes,
                         std::mt19937_64& gen) {
    MorphismTree t;
    std::uniform_int_distribution<size_t> pick_vertex(0, domain.size() - 1);
    for (int i = 0; i < extra_nodes; ++i) {
        std::vector<int> eligible;
        for (int node = 0; node < t.node_count(); ++node)
            if (t.depth(node) < max_depth) eligible.push_back(node);
        std::uniform_int_distribution<size_t> pick_parent(0, eligible.size() - 1);
        int parent = eligible[pick_parent(gen)];
        int id = t.node_count();
        t.nodes.push_back({parent, domain[pick_vertex(gen)], -1, {}});
        t.nodes[parent].children.push_back(id);
    }
    return t;
}

int root_code(const MorphismTree& t, const ProfileContext& ctx, CodeTable& table) {
    return subtree_codes(t, ctx, table)[0];
}

std::function<int(Vertex)> part_lookup(const std::map<Vertex, int>& m) {
    return [m](Vertex v) { return m.at(v); };
}

// Random partition of 1..n into parts labeled by their smallest member.
std::map<Vertex, int> random_partition(int n, std::mt19937_64& gen) {
    std::vector<std::vector<Vertex>> parts;
    for (Vertex v = 1; v <= n; ++v) {
        std::uniform_int_distribution<size_t> pick(0, parts.size());
        size_t slot = pick(gen);
        if (slot == parts.size())
            parts.push_back({v});
        else
            parts[slot].push_back(v);
    }
    std::map<Vertex, int> out;
    for (auto& part : parts)
        for (Vertex v : part) out[v] = part.front();
    return out;
}

}  // namespace

TEST_CASE("complete trees have one child per domain vertex down to the depth") {
    MorphismTree t = MorphismTree::complete({1, 2, 3}, 2);
    CHECK(t.node_count() == 1 + 3 + 9);
    CHECK(t.max_depth() == 2);
    for (int node = 0; node < t.node_count(); ++node) {
        if (t.depth(node) < 2) {
            REQUIRE(t.nodes[node].children.size() == 3);
            CHECK(t.nodes[t.nodes[node].children[0]].vertex == 1);
            CHECK(t.nodes[t.nodes[node].children[2]].vertex == 3);
        } else {
            CHECK(t.nodes[node].children.empty());
        }
    }
    CHECK(t.tuple(0).empty());

    MorphismTree p = MorphismTree::path(7, 3);
    CHECK(p.node_count() == 4);
    CHECK(p.tuple(3) == std::vector<Vertex>{7, 7, 7});
}

TEST_CASE("profiles pack equality, arcs, loops, and unary marks") {
    BinaryStructure s;
    s.n = 3;
    s.relations = {{"r", {{1, 2}, {2, 2}, {3, 1}}}};
    s.unary = {{"u", {2}}};
    ProfileContext ctx{&s, {}};

    MorphismTree t;
    t.nodes.push_back({0, 1, -1, {}});  // node 1 maps to vertex 1
    t.nodes[0].children.push_back(1);
    t.nodes.push_back({1, 2, -1, {}});  // node 2 maps to vertex 2
    t.nodes[1].children.push_back(2);
    t.nodes.push_back({2, 3, -1, {}});  // node 3 maps to vertex 3
    t.nodes[2].children.push_back(3);

    // Vertex 1 at depth 1: no ancestors, no loop, unmarked.
    CHECK(node_profile(t, 1, ctx) == std::vector<int>{0, 0, 0});
    // Vertex 2 under 1: marked, loop in r, arc 1->2 seen forward.
    CHECK(node_profile(t, 2, ctx) == std::vector<int>{0, 1, 1, 2});
    // Vertex 3 under (1,2): arc 3->1 seen backward against the first
    // ancestor, nothing against the second.
    CHECK(node_profile(t, 3, ctx) == std::vector<int>{0, 0, 0, 4, 0});

    CHECK_THROWS_AS((void)node_profile(t, 0, ctx), std::invalid_argument);

    std::map<Vertex, int> parts{{1, 5}, {2, 5}, {3, 9}};
    ProfileContext pctx{&s, part_lookup(parts)};
    CHECK(node_profile(t, 1, pctx)[0] == 5);
    CHECK(node_profile(t, 3, pctx)[0] == 9);
}

TEST_CASE("profiles refuse oversized signatures") {
    BinaryStructure s;
    s.n = 1;
    for (int i = 0; i < 15; ++i) s.relations.push_back({"r" + std::to_string(i), {}});
    MorphismTree t;
    t.nodes.push_back({0, 1, -1, {}});
    t.nodes[0].children.push_back(1);
    ProfileContext ctx{&s, {}};
    CHECK_THROWS_AS((void)node_profile(t, 1, ctx), std::invalid_argument);
}

TEST_CASE("interned codes coincide with the backtracking automorphism test") {
    auto gen = rng(601);
    for (int round = 0; round < 40; ++round) {
        int n = 2 + static_cast<int>(gen() % 3);
        Trigraph g = random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);
        MorphismTree t = random_tree(3, domain, 10 + static_cast<int>(gen() % 8), gen);

        ProfileContext ctx{&s, {}};
        if (round % 3 == 0) ctx.part_of = part_lookup(random_partition(n, gen));

        CodeTable table;
        std::vector<int> codes = subtree_codes(t, ctx, table);
        for (int node = 0; node < t.node_count(); ++node) {
            const auto& kids = t.nodes[node].children;
            for (size_t i = 0; i < kids.size(); ++i)
                for (size_t j = i + 1; j < kids.size(); ++j)
                    CHECK((codes[kids[i]] == codes[kids[j]]) ==
                          subtree_equiv(t, kids[i], kids[j], ctx));
        }
    }
}

TEST_CASE("reduction is idempotent and leaves no equivalent siblings") {
    auto gen = rng(607);
    for (int round = 0; round < 30; ++round) {
        int n = 2 + static_cast<int>(gen() % 3);
        BinaryStructure s = BinaryStructure::from_graph(random_graph(n, 0.5, gen));
        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);
        ProfileContext ctx{&s, {}};

        MorphismTree t = round % 2 == 0 ? MorphismTree::complete(domain, 2)
                                        : random_tree(3, domain, 14, gen);
        MorphismTree r = reduce(t, ctx);
        CHECK(reduce(r, ctx) == r);

        CodeTable table;
        std::vector<int> codes = subtree_codes(r, ctx, table);
        for (int node = 0; node < r.node_count(); ++node) {
            std::set<int> seen;
            for (int c : r.nodes[node].children) CHECK(seen.insert(codes[c]).second);
        }

        // Reduction only deletes tuples.
        auto before = tuple_multiset(t);
        for (auto& tup : tuple_multiset(r))
            CHECK(std::binary_search(before.begin(), before.end(), tup));

        // And the normal form's code ignores the input's child order.
        CodeTable shared;
        CHECK(root_code(r, ctx, shared) ==
              root_code(reduce(reversed_children(t), ctx), ctx, shared));
    }
}

TEST_CASE("reducts of known graphs hit their closed-form sizes") {
    // Complete graph: every branch collapses to "repeat or fresh".
    BinaryStructure k3 = BinaryStructure::from_graph(cycle_graph(3));
    ProfileContext ctx3{&k3, {}};
    CHECK(reduce(MorphismTree::complete({1, 2, 3}, 2), ctx3).node_count() == 4);

    // Three-vertex path: the two endpoints merge, the middle stays.
    BinaryStructure p3 = BinaryStructure::from_graph(path_graph(3));
    ProfileContext ctxp{&p3, {}};
    MorphismTree r = reduce(MorphismTree::complete({1, 2, 3}, 2), ctxp);
    CHECK(r.node_count() == 8);
    CHECK(reduce(MorphismTree::complete({1, 2, 3}, 1), ctxp).node_count() == 2);
}

TEST_CASE("partitioned reduction only merges within parts") {
    BinaryStructure s = BinaryStructure::from_graph(Trigraph::from_edges(2, {}));
    std::map<Vertex, int> separate{{1, 1}, {2, 2}};
    ProfileContext ctx{&s, part_lookup(separate)};
    MorphismTree t = MorphismTree::complete({1, 2}, 1);
    CHECK(reduce(t, ctx).node_count() == 3);  // nothing merges across parts

    std::map<Vertex, int> together{{1, 1}, {2, 1}};
    ProfileContext ctx2{&s, part_lookup(together)};
    CHECK(reduce(t, ctx2).node_count() == 2);  // twins in one part merge
}

TEST_CASE("minimax evaluation matches brute force on complete trees") {
    auto gen = rng(613);
    for (int round = 0; round < 40; ++round) {
        int n = 1 + static_cast<int>(gen() % 4);
        Trigraph g = random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);

        int l = 1 + static_cast<int>(gen() % 3);
        PrenexFormula f = parse_formula(random_sentence(l, gen));
        MorphismTree t = MorphismTree::complete(domain, l);

        CHECK(minimax_eval(t, f, s) == brute_force_check(s, f));

        // Reduction preserves the verdict, partitioned or not.
        ProfileContext ctx{&s, {}};
        CHECK(minimax_eval(reduce(t, ctx), f, s) == brute_force_check(s, f));
        ProfileContext pctx{&s, part_lookup(random_partition(n, gen))};
        CHECK(minimax_eval(reduce(t, pctx), f, s) == brute_force_check(s, f));
    }
}

TEST_CASE("minimax rejects malformed inputs") {
    BinaryStructure s = BinaryStructure::from_graph(path_graph(2));
    MorphismTree t = MorphismTree::complete({1, 2}, 2);
    CHECK_THROWS_AS((void)minimax_eval(t, parse_formula("E x E y E z E(x,y)"), s),
                    std::invalid_argument);  // a leaf sits above depth 3
    CHECK_THROWS_AS((void)minimax_eval(t, parse_formula("E(x,y)"), s), std::invalid_argument);
    CHECK_THROWS_AS((void)minimax_eval(t, parse_formula("E x E(x,y)"), s), std::invalid_argument);
}

TEST_CASE("five-entry tuple over a fifteen-part red graph") {
    BfsOracle oracle;
    for (int p = 1; p <= 15; ++p) oracle.add_node(p);
    for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2},
                                                        {2, 3},
                                                        {8, 6},
                                                        {6, 3},
                                                        {8, 9},
                                                        {9, 7},
                                                        {7, 6},
                                                        {12, 15},
                                                        {12, 11},
                                                        {7, 4},
                                                        {10, 14},
                                                        {4, 10}})
        oracle.add_edge(a, b);

    std::vector<int> parts = {8, 3, 8, 1, 9};
    SequenceGraphView sg = sequence_graph(parts, 5, oracle);
    REQUIRE(sg.size() == 5);

    std::set<std::pair<int, int>> expected = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {0, 4}, {2, 4}};
    for (int j = 0; j < 5; ++j)
        for (int k = j + 1; k < 5; ++k)
            CHECK(static_cast<bool>(sg.adj[j][k]) == (expected.count({j, k}) == 1));
    CHECK(sg.connected);
    for (int j = 0; j < 5; ++j) {
        CHECK(sg.component[j] == sg.component[0]);
        CHECK(sg.local_root[j] == 8);
    }
}

TEST_CASE("sequence graph thresholds shrink geometrically") {
    BfsOracle oracle;
    for (int p = 1; p <= 4; ++p) oracle.add_node(p);
    oracle.add_edge(1, 2);
    oracle.add_edge(2, 3);
    oracle.add_edge(3, 4);

    // l = 3: the second entry joins within distance 3, the third within 1.
    SequenceGraphView sg = sequence_graph({1, 4, 2}, 3, oracle);
    CHECK(static_cast<bool>(sg.adj[0][1]));        // d(1,4) = 3 <= 3
    CHECK(static_cast<bool>(sg.adj[0][2]));        // d(1,2) = 1 <= 1
    CHECK_FALSE(static_cast<bool>(sg.adj[1][2]));  // d(4,2) = 2 > 1
    CHECK(sg.connected);
}

TEST_CASE("local roots split by component") {
    BfsOracle oracle;
    for (int p = 1; p <= 4; ++p) oracle.add_node(p);
    oracle.add_edge(1, 2);

    SequenceGraphView sg = sequence_graph({1, 4, 2}, 3, oracle);
    CHECK_FALSE(sg.connected);  // part 4 is isolated in the red graph
    CHECK(sg.local_root[0] == 1);
    CHECK(sg.local_root[1] == 4);
    CHECK(sg.local_root[2] == 1);  // joins the first component through part 1
}

TEST_CASE("earlier neighbors of any position form a clique") {
    auto gen = rng(617);
    for (int round = 0; round < 60; ++round) {
        int parts_n = 2 + static_cast<int>(gen() % 8);
        BfsOracle oracle;
        for (int p = 1; p <= parts_n; ++p) oracle.add_node(p);
        for (int a = 1; a <= parts_n; ++a)
            for (int b = a + 1; b <= parts_n; ++b)
                if (gen() % 3 == 0) oracle.add_edge(a, b);

        int l = 2 + static_cast<int>(gen() % 3);
        std::vector<int> parts;
        for (int i = 0; i < l; ++i) parts.push_back(1 + static_cast<int>(gen() % parts_n));

        SequenceGraphView sg = sequence_graph(parts, l, oracle);
        for (int m = 0; m < l; ++m)
            for (int j = 0; j < m; ++j)
                for (int k = j + 1; k < m; ++k)
                    if (sg.adj[j][m] && sg.adj[k][m]) CHECK(static_cast<bool>(sg.adj[j][k]));
    }
}

TEST_CASE("shuffling the per-vertex paths rebuilds the complete tree") {
    for (int n = 1; n <= 3; ++n)
        for (int l = 1; l <= 3; ++l) {
            std::vector<MorphismTree> paths;
            for (Vertex v = 1; v <= n; ++v) paths.push_back(MorphismTree::path(v, l));
            std::vector<const MorphismTree*> ptrs;
            for (auto& p : paths) ptrs.push_back(&p);

            std::vector<Vertex> domain(n);
            std::iota(domain.begin(), domain.end(), 1);
            // node numbering is construction order; compare by tuples, which
            // pin these trees completely
            CHECK(tuple_multiset(shuffle_l(ptrs, l)) ==
                  tuple_multiset(MorphismTree::complete(domain, l)));
        }
}

TEST_CASE("the shuffle of a single tree is that tree") {
    auto gen = rng(619);
    MorphismTree t = random_tree(3, {1, 2, 3}, 9, gen);
    MorphismTree s = strip_origins(shuffle_l({&t}, 3));
    CHECK(tuple_multiset(s) == tuple_multiset(t));
    CHECK(s.node_count() == t.node_count());
}

TEST_CASE("two depth-2 paths interleave into seven nodes") {
    MorphismTree a = MorphismTree::path(1, 2);
    MorphismTree b = MorphismTree::path(2, 2);
    MorphismTree s = shuffle_l({&a, &b}, 2);
    CHECK(s.node_count() == 7);  // root, two singles, four ordered pairs
    CHECK(tuple_multiset(s) == tuple_multiset(MorphismTree::complete({1, 2}, 2)));

    // Depth caps apply: the 1-shuffle keeps only the singles.
    CHECK(shuffle_l({&a, &b}, 1).node_count() == 3);
}

TEST_CASE("shuffle origins track the input trees") {
    MorphismTree a = MorphismTree::path(1, 2);
    MorphismTree b = MorphismTree::path(2, 2);
    MorphismTree s = shuffle_l({&a, &b}, 2);
    for (int node = 1; node < s.node_count(); ++node) {
        CHECK(s.nodes[node].origin == (s.nodes[node].vertex == 1 ? 0 : 1));
    }
}

TEST_CASE("prefix-closed keep predicates prune whole branches") {
    MorphismTree a = MorphismTree::path(1, 2);
    MorphismTree b = MorphismTree::path(2, 2);
    // Keep only tuples that start with vertex 1.
    auto keep = [](const std::vector<Vertex>& tuple, const std::vector<int>&) {
        return tuple[0] == 1;
    };
    MorphismTree s = shuffle_keep({{1, &a}, {2, &b}}, 2, keep);
    auto tuples = tuple_multiset(s);
    CHECK(tuples == std::vector<std::vector<Vertex>>{{}, {1}, {1, 1}, {1, 2}});
}

TEST_CASE("connected rooted tuples never leave the threshold balls") {
    BfsOracle oracle;
    for (int p = 1; p <= 3; ++p) oracle.add_node(p);
    oracle.add_edge(1, 2);
    auto part_of = [](Vertex v) { return v <= 2 ? static_cast<int>(v) : 3; };

    CHECK(connected_rooted_at({1}, 1, 2, part_of, oracle));
    CHECK_FALSE(connected_rooted_at({1}, 2, 2, part_of, oracle));
    CHECK(connected_rooted_at({1, 2}, 1, 2, part_of, oracle));   // distance 1 <= 3^0
    CHECK_FALSE(connected_rooted_at({1, 3}, 1, 2, part_of, oracle));  // part 3 is far
    CHECK(connected_rooted_at({1, 1}, 1, 2, part_of, oracle));
}

TEST_CASE("pruned shuffle of all rooted restrictions rebuilds the whole tree") {
    auto gen = rng(631);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + static_cast<int>(gen() % 3);
        int l = 1 + static_cast<int>(gen() % 3);
        Trigraph g = random_graph(n, 0.5, gen);
        std::map<Vertex, int> part_map = random_partition(n, gen);
        BfsOracle oracle = part_distance_oracle(g, part_map);
        auto part_of = part_lookup(part_map);

        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);
        MorphismTree whole = MorphismTree::complete(domain, l);

        std::set<int> part_ids;
        for (auto& [v, p] : part_map) part_ids.insert(p);

        std::vector<MorphismTree> rooted;
        std::vector<RootedTree> inputs;
        for (int p : part_ids) rooted.push_back(restrict_to_root(whole, p, l, part_of, oracle));
        int idx = 0;
        for (int p : part_ids) inputs.push_back({p, &rooted[idx++]});

        MorphismTree rebuilt = pruned_shuffle(inputs, l, part_of, oracle, true);
        CHECK(rebuilt.node_count() == whole.node_count());
        CHECK(tuple_multiset(rebuilt) == tuple_multiset(whole));
    }
}

TEST_CASE("pruned shuffle audits its inputs") {
    BfsOracle oracle;
    oracle.add_node(1);
    oracle.add_node(2);
    auto part_of = [](Vertex v) { return static_cast<int>(v); };

    // A path claiming the wrong root part must be rejected.
    MorphismTree wrong = MorphismTree::path(2, 1);
    CHECK_THROWS_AS((void)pruned_shuffle({{1, &wrong}}, 1, part_of, oracle, true),
                    std::invalid_argument);
    // With auditing off the caller's claim is taken at face value.
    MorphismTree ok = MorphismTree::path(1, 1);
    CHECK_NOTHROW((void)pruned_shuffle({{1, &ok}}, 1, part_of, oracle, true));
}

TEST_CASE("restricting after reducing matches reducing the restriction") {
    auto gen = rng(641);
    for (int round = 0; round < 25; ++round) {
        int n = 2 + static_cast<int>(gen() % 3);
        int l = 1 + static_cast<int>(gen() % 3);
        Trigraph g = random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        std::map<Vertex, int> part_map = random_partition(n, gen);
        BfsOracle oracle = part_distance_oracle(g, part_map);
        auto part_of = part_lookup(part_map);
        ProfileContext ctx{&s, part_of};

        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);
        MorphismTree whole = MorphismTree::complete(domain, l);
        int X = part_map.at(1 + static_cast<int>(gen() % n));

        MorphismTree direct = reduce(restrict_to_root(whole, X, l, part_of, oracle), ctx);
        MorphismTree via_reduct =
            restrict_to_root(reduce(whole, ctx), X, l, part_of, oracle);

        // The restricted reduction reduces to the same reduct.
        CodeTable shared;
        CHECK(root_code(direct, ctx, shared) == root_code(reduce(via_reduct, ctx), ctx, shared));

        // And it only contains tuples of the plain restriction.
        auto allowed = tuple_multiset(restrict_to_root(whole, X, l, part_of, oracle));
        for (auto& tup : tuple_multiset(via_reduct))
            CHECK(std::binary_search(allowed.begin(), allowed.end(), tup));
    }
}

TEST_CASE("replacing a shuffle input by its reduct reduces the output") {
    auto gen = rng(643);
    for (int round = 0; round < 20; ++round) {
        // Disjoint union: vertices 1..a and a+1..a+b with edges inside only.
        int a = 1 + static_cast<int>(gen() % 3);
        int b = 1 + static_cast<int>(gen() % 3);
        int l = 1 + static_cast<int>(gen() % 2);
        Trigraph left = random_graph(a, 0.6, gen);
        Trigraph right = random_graph(b, 0.6, gen);
        Trigraph both;
        for (int v = 1; v <= a + b; ++v) both.add_vertex(v);
        for (auto [u, v] : edge_set(left, EdgeColor::Black)) both.set_edge(u, v, EdgeColor::Black);
        for (auto [u, v] : edge_set(right, EdgeColor::Black))
            both.set_edge(u + a, v + a, EdgeColor::Black);

        BinaryStructure s = BinaryStructure::from_graph(both);
        ProfileContext ctx{&s, {}};

        std::vector<Vertex> dl(a), dr(b);
        std::iota(dl.begin(), dl.end(), 1);
        std::iota(dr.begin(), dr.end(), a + 1);

        MorphismTree tl = MorphismTree::complete(dl, l);
        MorphismTree tr = MorphismTree::complete(dr, l);
        MorphismTree rl = reduce(tl, ctx);

        std::vector<Vertex> domain(a + b);
        std::iota(domain.begin(), domain.end(), 1);
        MorphismTree whole = MorphismTree::complete(domain, l);

        CodeTable shared;
        int want = root_code(reduce(whole, ctx), ctx, shared);
        CHECK(root_code(reduce(shuffle_l({&tl, &tr}, l), ctx), ctx, shared) == want);
        CHECK(root_code(reduce(shuffle_l({&rl, &tr}, l), ctx), ctx, shared) == want);
    }
}
