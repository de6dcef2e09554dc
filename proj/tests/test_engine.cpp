#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "tww/engine.hpp"
#include "tww/exact.hpp"
#include "util.hpp"

using namespace tww;
using namespace twwtest;

namespace {

int pow3(int e) {
    int r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

// Test-side partition mirror, maintained by replaying the merge steps.
struct PartitionMirror {
    std::map<Vertex, int> part;

    explicit PartitionMirror(int n) {
        for (Vertex v = 1; v <= n; ++v) part[v] = v;
    }
    void merge(const ContractionStep& stp) {
        for (auto& [v, p] : part)
            if (p == stp.u || p == stp.v) p = stp.w;
    }
    std::set<int> live() const {
        std::set<int> out;
        for (auto& [v, p] : part) out.insert(p);
        return out;
    }
    std::map<int, std::set<Vertex>> members() const {
        std::map<int, std::set<Vertex>> out;
        for (auto& [v, p] : part) out[p].insert(v);
        return out;
    }
};

// Red part graph recomputed from scratch: a pair is red iff it is not
// homogeneous in the input structure.
std::map<int, std::set<int>> scratch_red(const BinaryStructure& s, const PartitionMirror& pm) {
    auto mem = pm.members();
    std::map<int, std::set<int>> red;
    for (auto it = mem.begin(); it != mem.end(); ++it)
        for (auto jt = std::next(it); jt != mem.end(); ++jt)
            if (!homogeneous(s, it->second, jt->second)) {
                red[it->first].insert(jt->first);
                red[jt->first].insert(it->first);
            }
    return red;
}

BfsOracle oracle_of(const std::set<int>& live, const std::map<int, std::set<int>>& red) {
    BfsOracle o;
    for (int p : live) o.add_node(p);
    for (auto& [p, qs] : red)
        for (int q : qs)
            if (p < q) o.add_edge(p, q);
    return o;
}

int root_code(const MorphismTree& t, const ProfileContext& ctx, CodeTable& table) {
    return subtree_codes(t, ctx, table)[0];
}

}  // namespace

TEST_CASE("initial state holds one constant path per vertex") {
    Trigraph g = path_graph(4);
    BinaryStructure s = BinaryStructure::from_graph(g);
    DPState st = dp_init(s, 2);

    for (Vertex v = 1; v <= 4; ++v) {
        CHECK(st.part_of(v) == v);
        CHECK(st.reducts.at(v) == MorphismTree::path(v, 2));
    }
    CHECK(st.red.empty());
    CHECK_FALSE(st.mixed(1, 2));
    CHECK(st.stats.empty());
    CHECK_THROWS_AS((void)st.part_of(5), std::invalid_argument);
    CHECK_THROWS_AS((void)dp_init(s, 0), std::invalid_argument);
}

TEST_CASE("every stored reduct matches a scratch recomputation after each step") {
    auto gen = rng(701);
    for (int round = 0; round < 24; ++round) {
        int n = 2 + static_cast<int>(gen() % 4);
        int l = 1 + static_cast<int>(gen() % 3);
        Trigraph g = random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        DpRadii radii = round % 2 == 0 ? DpRadii::Wide : DpRadii::Tight;

        ContractionSequence seq = greedy_sequence(g);
        DPState st = dp_init(s, l, {}, radii);
        PartitionMirror pm(n);
        std::vector<Vertex> domain(n);
        std::iota(domain.begin(), domain.end(), 1);
        MorphismTree whole = MorphismTree::complete(domain, l);

        for (const ContractionStep& stp : seq.steps) {
            dp_step(st, stp);
            pm.merge(stp);

            for (Vertex v = 1; v <= n; ++v) CHECK(st.part_of(v) == pm.part.at(v));

            auto red = scratch_red(s, pm);
            for (int p : pm.live()) {
                auto it = st.red.find(p);
                std::set<int> got = it == st.red.end() ? std::set<int>{} : it->second;
                CHECK(got == red[p]);
            }

            BfsOracle oracle = oracle_of(pm.live(), red);
            auto part_of = [&pm](Vertex v) { return pm.part.at(v); };
            ProfileContext ctx{&s, part_of};
            CodeTable shared;
            for (int p : pm.live()) {
                MorphismTree scratch =
                    reduce(restrict_to_root(whole, p, l, part_of, oracle), ctx);
                CHECK(root_code(st.reducts.at(p), ctx, shared) ==
                      root_code(scratch, ctx, shared));
            }
        }
    }
}

TEST_CASE("parts far from the merge keep their trees bit for bit") {
    auto gen = rng(709);
    for (int round = 0; round < 10; ++round) {
        int n = 7 + static_cast<int>(gen() % 2);
        int l = 2;
        Trigraph g = random_tree(n, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        DpRadii radii = round % 2 == 0 ? DpRadii::Wide : DpRadii::Tight;

        DPState st = dp_init(s, l, {}, radii);
        PartitionMirror pm(n);
        for (const ContractionStep& stp : greedy_sequence(g).steps) {
            std::map<int, MorphismTree> before = st.reducts;
            dp_step(st, stp);
            pm.merge(stp);

            BfsOracle oracle = oracle_of(pm.live(), scratch_red(s, pm));
            for (int p : pm.live()) {
                if (p == stp.w) continue;
                if (oracle(p, stp.w) > pow3(l)) CHECK(st.reducts.at(p) == before.at(p));
            }
        }
    }
}

TEST_CASE("tight radii refresh no more parts than wide ones") {
    auto gen = rng(719);
    for (int round = 0; round < 8; ++round) {
        int n = 5 + static_cast<int>(gen() % 3);
        Trigraph g = random_graph(n, 0.4, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        ContractionSequence seq = greedy_sequence(g);

        DPState wide = dp_init(s, 2, {}, DpRadii::Wide);
        DPState tight = dp_init(s, 2, {}, DpRadii::Tight);
        for (const ContractionStep& stp : seq.steps) {
            dp_step(wide, stp);
            dp_step(tight, stp);
        }
        REQUIRE(wide.stats.size() == tight.stats.size());
        for (size_t i = 0; i < wide.stats.size(); ++i) {
            CHECK(tight.stats[i].parts_refreshed <= wide.stats[i].parts_refreshed);
            CHECK(wide.stats[i].merged == tight.stats[i].merged);
        }
    }
}

TEST_CASE("folding a path refreshes a bounded neighborhood each step") {
    int n = 30;
    ContractionSequence seq = path_fold(n);
    BinaryStructure s = BinaryStructure::from_graph(seq.initial);
    DPState st = dp_init(s, 2);
    for (const ContractionStep& stp : seq.steps) {
        dp_step(st, stp);
        CHECK(st.stats.back().merged == stp.w);
        CHECK(st.stats.back().parts_refreshed <= 2);
        CHECK(st.stats.back().largest_reduct > 0);
        CHECK(st.stats.back().shuffle_nodes > 0);
    }
    CHECK(static_cast<int>(st.stats.size()) == n - 1);
}

TEST_CASE("merge bookkeeping rejects malformed steps") {
    BinaryStructure s = BinaryStructure::from_graph(path_graph(3));
    DPState st = dp_init(s, 1);
    CHECK_THROWS_AS(dp_step(st, {1, 1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(dp_step(st, {1, 2, 5}), std::invalid_argument);  // 4 is next
    CHECK_THROWS_AS(dp_step(st, {1, 9, 4}), std::invalid_argument);
    dp_step(st, {1, 2, 4});
    CHECK_THROWS_AS(dp_step(st, {1, 3, 5}), std::invalid_argument);  // 1 is dead
}

TEST_CASE("a corrupted stored reduct trips the rootedness audit") {
    BinaryStructure s = BinaryStructure::from_graph(path_graph(3));
    DPState st = dp_init(s, 1);
    st.reducts.at(1) = MorphismTree::path(2, 1);  // tuple (2) is not rooted at part 1
    CHECK_THROWS_AS(dp_step(st, {2, 3, 4}), std::logic_error);
}

TEST_CASE("the reduct cap aborts oversized shuffles") {
    auto gen = rng(727);
    Trigraph g = random_graph(6, 0.5, gen);
    BinaryStructure s = BinaryStructure::from_graph(g);
    Caps caps;
    caps.reduct_nodes = 2;
    DPState st = dp_init(s, 2, caps);
    CHECK_THROWS_AS(dp_step(st, greedy_sequence(g).steps.front()), CapError);
}

TEST_CASE("model checking agrees with brute force on the two-variable battery") {
    const char* prefixes[] = {"E x1 E x2 ", "E x1 A x2 ", "A x1 E x2 ", "A x1 A x2 "};
    for (int n = 1; n <= 4; ++n) {
        for (const Trigraph& g : nonisomorphic_graphs(n)) {
            BinaryStructure s = BinaryStructure::from_graph(g);
            ContractionSequence seq = greedy_sequence(g);
            for (const std::string& body : sentence_bodies_two_vars())
                for (const char* prefix : prefixes) {
                    PrenexFormula f = parse_formula(prefix + ("(" + body + ")"));
                    CHECK(model_check(s, seq, f) == brute_force_check(s, f));
                }
        }
    }
}

TEST_CASE("model checking agrees with brute force on random sentences") {
    auto gen = rng(733);
    for (int round = 0; round < 60; ++round) {
        int n = 1 + static_cast<int>(gen() % 6);
        Trigraph g = round % 3 == 0 && n >= 2 ? random_tree(n, gen) : random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        ContractionSequence seq = greedy_sequence(g);

        int l = 1 + static_cast<int>(gen() % 3);
        PrenexFormula f = parse_formula(random_sentence(l, gen));
        bool want = brute_force_check(s, f);
        CHECK(model_check(s, seq, f, {}, DpRadii::Wide) == want);
        CHECK(model_check(s, seq, f, {}, DpRadii::Tight) == want);
    }
}

TEST_CASE("repeated queries reuse the cached reduct") {
    Trigraph g = cycle_graph(6);
    BinaryStructure s = BinaryStructure::from_graph(g);
    ModelChecker mc(s, greedy_sequence(g));

    CHECK_THROWS_AS((void)mc.stats(2), std::invalid_argument);
    bool first = mc.check(parse_formula("E x A y (E(x,y) | x=y)"));
    CHECK_FALSE(first);  // a 6-cycle has no dominating vertex
    CHECK(mc.stats(2).size() == 5);
    CHECK_THROWS_AS((void)mc.stats(3), std::invalid_argument);

    const MorphismTree& r2 = mc.reduct(2);
    CHECK(&r2 == &mc.reduct(2));  // same cached object
    CHECK(mc.check(parse_formula("E x E y E(x,y)")));

    ModelChecker again(s, greedy_sequence(g));
    CHECK(again.reduct(2) == mc.reduct(2));  // deterministic rebuild
}

TEST_CASE("the checker validates sequences and sentences up front") {
    Trigraph g = path_graph(3);
    BinaryStructure s = BinaryStructure::from_graph(g);
    ContractionSequence seq = greedy_sequence(g);

    CHECK_THROWS_AS(ModelChecker(s, ContractionSequence{}), std::invalid_argument);
    ContractionSequence wrong_w = seq;
    wrong_w.steps[0].w = 9;
    CHECK_THROWS_AS(ModelChecker(s, wrong_w), std::invalid_argument);
    ContractionSequence dead = seq;
    dead.steps[1] = {dead.steps[0].u, 3, 5};
    CHECK_THROWS_AS(ModelChecker(s, dead), std::invalid_argument);

    ModelChecker mc(s, seq);
    CHECK_THROWS_AS((void)mc.check(parse_formula("E x E(x,y)")), std::invalid_argument);
    CHECK_THROWS_AS((void)mc.check(parse_formula("E(x,y)")), std::invalid_argument);
}

TEST_CASE("the empty structure answers by quantifier alone") {
    BinaryStructure s;
    s.relations.emplace_back("E", std::set<std::pair<Vertex, Vertex>>{});
    ModelChecker mc(s, ContractionSequence{});
    CHECK_FALSE(mc.check(parse_formula("E x (x=x)")));
    CHECK(mc.check(parse_formula("A x (!(x=x))")));
    CHECK_THROWS_AS((void)mc.reduct(1), std::invalid_argument);
}

TEST_CASE("interpreting the complement formula complements the graph") {
    auto gen = rng(739);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + static_cast<int>(gen() % 7);
        Trigraph g = random_graph(n, 0.5, gen);
        BinaryStructure s = BinaryStructure::from_graph(g);
        ContractionSequence seq = greedy_sequence(g);

        Trigraph got = interpret(s, seq, parse_formula("!(E(x,y))"));
        Trigraph want = g.complement();
        CHECK(edge_set(got, EdgeColor::Black) == edge_set(want, EdgeColor::Black));
    }
}

TEST_CASE("interpreting the square formula matches breadth-first distances") {
    auto gen = rng(743);
    PrenexFormula sq = parse_formula("E z (E(x,y) | E(x,z) & E(z,y))");
    for (int round = 0; round < 20; ++round) {
        int n = 2 + static_cast<int>(gen() % 7);
        Trigraph g = random_graph(n, 0.4, gen);
        Trigraph got = interpret(BinaryStructure::from_graph(g), greedy_sequence(g), sq);

        BfsOracle dist;
        for (Vertex v = 1; v <= n; ++v) dist.add_node(v);
        for (auto [u, v] : edge_set(g, EdgeColor::Black)) dist.add_edge(u, v);
        for (Vertex a = 1; a <= n; ++a)
            for (Vertex b = a + 1; b <= n; ++b)
                CHECK((got.edge_color(a, b) == EdgeColor::Black) ==
                      (dist(a, b) >= 1 && dist(a, b) <= 2));
    }
}

TEST_CASE("interpretation needs two free variables and bounded work") {
    Trigraph g = path_graph(4);
    BinaryStructure s = BinaryStructure::from_graph(g);
    ContractionSequence seq = greedy_sequence(g);

    CHECK_THROWS_AS((void)interpret(s, seq, parse_formula("E x E(x,y)")), std::invalid_argument);
    CHECK_THROWS_AS((void)interpret(s, seq, parse_formula("E x E y E(x,y)")),
                    std::invalid_argument);

    Caps tiny;
    tiny.brute_assignments = 3;
    CHECK_THROWS_AS((void)interpret(s, seq, parse_formula("!(E(x,y))"), tiny), CapError);

    // An asymmetric requirement never yields an edge: both directions must hold.
    Trigraph loops = interpret(s, seq, parse_formula("E(x,y) & !(E(y,x))"));
    CHECK(edge_set(loops, EdgeColor::Black).empty());
}
