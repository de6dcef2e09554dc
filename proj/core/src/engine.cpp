#include "tww/engine.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace tww {

namespace {

int pow3(int e) {
    int r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

int pow3_or_zero(int e) { return e < 0 ? 0 : pow3(e); }

constexpr std::uint8_t kAnyF = 1, kAllF = 2, kAnyB = 4, kAllB = 8;

std::uint8_t mirror_bits(std::uint8_t b) {
    return static_cast<std::uint8_t>(((b & 3) << 2) | (b >> 2));
}

bool mixed_bits(const std::vector<std::uint8_t>& bits) {
    for (std::uint8_t b : bits) {
        if (bool(b & kAnyF) != bool(b & kAllF)) return true;
        if (bool(b & kAnyB) != bool(b & kAllB)) return true;
    }
    return false;
}

using Neighbors = std::function<std::set<int>(int)>;

std::map<int, int> red_ball(const Neighbors& neighbors, int from, int radius) {
    std::map<int, int> dist{{from, 0}};
    std::vector<int> frontier{from};
    for (int d = 1; d <= radius && !frontier.empty(); ++d) {
        std::vector<int> next;
        for (int p : frontier)
            for (int q : neighbors(p))
                if (dist.emplace(q, d).second) next.push_back(q);
        frontier = std::move(next);
    }
    return dist;
}

// memoized truncated part distances; anything beyond cap reads as cap+1
struct DistCache {
    const Neighbors* neighbors;
    int cap;
    std::map<int, std::map<int, int>> balls;

    int operator()(int a, int b) {
        if (a == b) return 0;
        auto it = balls.find(a);
        if (it == balls.end()) it = balls.emplace(a, red_ball(*neighbors, a, cap)).first;
        auto jt = it->second.find(b);
        return jt == it->second.end() ? cap + 1 : jt->second;
    }
};

}  // namespace

int DPState::part_of(Vertex v) {
    if (v < 1 || v >= static_cast<int>(parent.size()))
        throw std::invalid_argument("vertex outside the partition");
    int p = v;
    while (parent[p] != p) {
        parent[p] = parent[parent[p]];
        p = parent[p];
    }
    return p;
}

bool DPState::mixed(int p, int q) const {
    auto it = rows.find(p);
    if (it == rows.end()) return false;
    auto jt = it->second.find(q);
    return jt != it->second.end() && mixed_bits(jt->second);
}

DPState dp_init(const BinaryStructure& s, int l, const Caps& caps, DpRadii radii) {
    s.validate();
    if (l < 1) throw std::invalid_argument("quantifier depth must be at least 1");
    if (s.relations.size() > 14)
        throw std::invalid_argument("too many binary relations to pack a profile");
    if (s.unary.size() > 31) throw std::invalid_argument("too many unary relations");

    DPState st;
    st.s = &s;
    st.l = l;
    st.caps = caps;
    st.radii = radii;
    st.parent.resize(s.n + 1);
    for (int i = 0; i <= s.n; ++i) st.parent[i] = i;

    int r = static_cast<int>(s.relations.size());
    for (int ri = 0; ri < r; ++ri) {
        for (auto [a, b] : s.relations[ri].second) {
            if (a == b) continue;  // loops never cross a part pair
            auto& fw = st.rows[a][b];
            if (fw.empty()) fw.assign(r, 0);
            fw[ri] |= kAnyF | kAllF;
            auto& bw = st.rows[b][a];
            if (bw.empty()) bw.assign(r, 0);
            bw[ri] |= kAnyB | kAllB;
        }
    }
    // singleton parts are homogeneous to each other, so no red edges yet
    for (Vertex v = 1; v <= s.n; ++v) st.reducts.emplace(v, MorphismTree::path(v, l));
    return st;
}

void dp_step(DPState& st, const ContractionStep& step) {
    const int u = step.u, v = step.v, w = step.w;
    const int r = static_cast<int>(st.s->relations.size());
    const int l = st.l;
    if (u == v) throw std::invalid_argument("merge needs two distinct parts");
    auto live = [&](int p) {
        return p >= 1 && p < static_cast<int>(st.parent.size()) && st.parent[p] == p;
    };
    if (!live(u) || !live(v)) throw std::invalid_argument("merge of an id that is not a live part");
    if (w != static_cast<int>(st.parent.size()))
        throw std::invalid_argument("merged id must be the next fresh id");

    // quotient row of the merged part: any = or, all = and, absent = zeros
    std::set<int> others;
    for (int src : {u, v}) {
        auto it = st.rows.find(src);
        if (it == st.rows.end()) continue;
        for (const auto& [q, bits] : it->second)
            if (q != u && q != v) others.insert(q);
    }
    const std::vector<std::uint8_t> zeros(r, 0);
    auto bits_of = [&](int p, int q) -> const std::vector<std::uint8_t>& {
        auto it = st.rows.find(p);
        if (it == st.rows.end()) return zeros;
        auto jt = it->second.find(q);
        return jt == it->second.end() ? zeros : jt->second;
    };
    std::map<int, std::vector<std::uint8_t>> row_w;
    for (int q : others) {
        const auto& bu = bits_of(u, q);
        const auto& bv = bits_of(v, q);
        std::vector<std::uint8_t> comb(r, 0);
        for (int ri = 0; ri < r; ++ri)
            comb[ri] = static_cast<std::uint8_t>(((bu[ri] | bv[ri]) & (kAnyF | kAnyB)) |
                                                 ((bu[ri] & bv[ri]) & (kAllF | kAllB)));
        row_w.emplace(q, std::move(comb));
    }
    std::set<int> w_red;
    for (const auto& [q, bits] : row_w)
        if (mixed_bits(bits)) w_red.insert(q);

    // distance oracles before and after the merge; commit happens later
    Neighbors nbrs_old = [&st](int p) -> std::set<int> {
        auto it = st.red.find(p);
        return it == st.red.end() ? std::set<int>{} : it->second;
    };
    Neighbors nbrs_new = [&](int p) -> std::set<int> {
        if (p == w) return w_red;
        std::set<int> out = nbrs_old(p);
        out.erase(u);
        out.erase(v);
        if (w_red.count(p)) out.insert(w);
        return out;
    };

    const int span = (pow3(l - 1) - 1) / 2;  // max spread of a connected rooted tuple
    const int refresh_radius = st.radii == DpRadii::Wide ? pow3(l) : span + pow3_or_zero(l - 2);
    const int input_radius = st.radii == DpRadii::Wide ? 2 * pow3(l) : span;
    const int dist_cap = 2 * pow3(l) + 1;

    DistCache old_cache{&nbrs_old, dist_cap, {}};
    DistCache new_cache{&nbrs_new, dist_cap, {}};
    DistanceOracle dist_old = [&old_cache](int a, int b) { return old_cache(a, b); };
    DistanceOracle dist_new = [&new_cache](int a, int b) { return new_cache(a, b); };

    auto part_old = [&st](Vertex x) { return st.part_of(x); };
    auto part_new = [&](Vertex x) {
        int p = st.part_of(x);
        return p == u || p == v ? w : p;
    };

    std::set<int> audited;
    auto audit_tree = [&](int root_part, const MorphismTree& t) {
        if (!audited.insert(root_part).second) return;
        for (int node = 1; node < t.node_count(); ++node)
            if (!connected_rooted_at(t.tuple(node), root_part, l, part_old, dist_old))
                throw std::logic_error("stored reduct is no longer rooted at its part");
    };

    std::map<int, int> refresh = red_ball(nbrs_new, w, refresh_radius);
    std::map<int, MorphismTree> fresh;
    long long shuffle_nodes = 0;
    long long largest = 0;
    for (const auto& [X, dist_to_w] : refresh) {
        std::map<int, int> in_ball = red_ball(nbrs_new, X, input_radius);
        std::vector<RootedTree> inputs;
        for (const auto& [Y, d] : in_ball) {
            if (Y == w) {
                inputs.push_back({u, &st.reducts.at(u)});
                inputs.push_back({v, &st.reducts.at(v)});
            } else {
                inputs.push_back({Y, &st.reducts.at(Y)});
            }
        }
        for (const RootedTree& in : inputs) audit_tree(in.root_part, *in.tree);

        long long kept = 0;
        auto keep = [&](const std::vector<Vertex>& tuple, const std::vector<int>& roots) {
            std::vector<int> po, pn;
            po.reserve(tuple.size());
            pn.reserve(tuple.size());
            for (Vertex x : tuple) {
                int p = st.part_of(x);
                po.push_back(p);
                pn.push_back(p == u || p == v ? w : p);
            }
            if (pn[0] != X) return false;
            SequenceGraphView sg_old = sequence_graph(po, l, dist_old);
            for (size_t e = 0; e < roots.size(); ++e)
                if (sg_old.local_root[e] != roots[e]) return false;
            if (!sequence_graph(pn, l, dist_new).connected) return false;
            if (++kept > st.caps.reduct_nodes)
                throw CapError("morphism tree exceeded the reduct cap during a shuffle");
            return true;
        };
        MorphismTree t = shuffle_keep(inputs, l, keep);
        shuffle_nodes += kept;
        ProfileContext ctx{st.s, part_new};
        MorphismTree red_t = reduce(t, ctx);
        largest = std::max<long long>(largest, red_t.node_count());
        fresh.emplace(X, std::move(red_t));
    }

    // commit: partition, quotient rows, red graph, reducts
    st.parent.push_back(w);
    st.parent[u] = w;
    st.parent[v] = w;

    st.rows.erase(u);
    st.rows.erase(v);
    for (const auto& [q, bits] : row_w) {
        auto& rq = st.rows[q];
        rq.erase(u);
        rq.erase(v);
        std::vector<std::uint8_t> m(r);
        for (int ri = 0; ri < r; ++ri) m[ri] = mirror_bits(bits[ri]);
        rq.emplace(w, std::move(m));
    }
    if (!row_w.empty()) st.rows.emplace(w, std::move(row_w));

    auto scrub = [&st](int p) {
        auto it = st.red.find(p);
        if (it == st.red.end()) return;
        for (int q : it->second) {
            auto jt = st.red.find(q);
            if (jt != st.red.end()) {
                jt->second.erase(p);
                if (jt->second.empty()) st.red.erase(jt);
            }
        }
        st.red.erase(p);
    };
    scrub(u);
    scrub(v);
    if (!w_red.empty()) {
        st.red[w] = w_red;
        for (int q : w_red) st.red[q].insert(w);
    }

    st.reducts.erase(u);
    st.reducts.erase(v);
    for (auto& [X, t] : fresh) st.reducts[X] = std::move(t);

    st.stats.push_back({w, static_cast<int>(refresh.size()), shuffle_nodes, largest});
}

ModelChecker::ModelChecker(BinaryStructure s, ContractionSequence seq, Caps caps, DpRadii radii)
    : s_(std::move(s)), seq_(std::move(seq)), caps_(caps), radii_(radii) {
    s_.validate();
    int n = s_.n;
    if (static_cast<int>(seq_.steps.size()) != std::max(0, n - 1))
        throw std::invalid_argument("model checking needs a full contraction sequence (" +
                                    std::to_string(std::max(0, n - 1)) + " steps for " +
                                    std::to_string(n) + " vertices)");
    std::vector<char> alive(n + seq_.steps.size() + 1, 0);
    for (Vertex v = 1; v <= n; ++v) alive[v] = 1;
    for (size_t i = 0; i < seq_.steps.size(); ++i) {
        const ContractionStep& stp = seq_.steps[i];
        int w = n + 1 + static_cast<int>(i);
        std::string at = "sequence step " + std::to_string(i + 1);
        if (stp.w != w)
            throw std::invalid_argument(at + ": merged id must be " + std::to_string(w));
        if (stp.u == stp.v || stp.u < 1 || stp.u >= w || stp.v < 1 || stp.v >= w ||
            !alive[stp.u] || !alive[stp.v])
            throw std::invalid_argument(at + ": invalid pair");
        alive[stp.u] = alive[stp.v] = 0;
        alive[w] = 1;
    }
}

const MorphismTree& ModelChecker::reduct(int l) {
    if (s_.n == 0) throw std::invalid_argument("the empty structure has no reduct");
    auto it = cache_.find(l);
    if (it == cache_.end()) {
        DPState st = dp_init(s_, l, caps_, radii_);
        for (const ContractionStep& stp : seq_.steps) dp_step(st, stp);
        int final_part = seq_.steps.empty() ? 1 : seq_.steps.back().w;
        it = cache_
                 .emplace(l, std::make_pair(std::move(st.reducts.at(final_part)),
                                            std::move(st.stats)))
                 .first;
    }
    return it->second.first;
}

bool ModelChecker::check(const PrenexFormula& f) {
    if (f.free_count() != 0)
        throw std::invalid_argument("model checking needs a sentence, got free variables");
    if (f.depth() == 0)
        throw std::invalid_argument("sentence must quantify at least one variable");
    if (s_.n == 0) return !f.exists[0];  // empty domain: leading E fails, leading A holds
    return minimax_eval(reduct(f.depth()), f, s_);
}

const std::vector<DpStepStats>& ModelChecker::stats(int l) const {
    auto it = cache_.find(l);
    if (it == cache_.end())
        throw std::invalid_argument("no depth-" + std::to_string(l) + " query has run");
    return it->second.second;
}

bool model_check(const BinaryStructure& s, const ContractionSequence& seq, const PrenexFormula& f,
                 const Caps& caps, DpRadii radii) {
    ModelChecker mc(s, seq, caps, radii);
    return mc.check(f);
}

Trigraph interpret(const BinaryStructure& s, const ContractionSequence& seq,
                   const PrenexFormula& f, const Caps& caps) {
    (void)seq;
    s.validate();
    if (f.free_count() != 2)
        throw std::invalid_argument("interpretation needs exactly two free variables");
    long long total = 1;
    for (int i = 0; i < f.depth() + 2; ++i) {
        total *= std::max(1, s.n);
        if (total > caps.brute_assignments)
            throw CapError("interpretation would evaluate more than " +
                           std::to_string(caps.brute_assignments) + " assignments");
    }

    Trigraph g;
    for (Vertex v = 1; v <= s.n; ++v) g.add_vertex(v);
    std::map<std::pair<Vertex, Vertex>, bool> holds;
    for (Vertex a = 1; a <= s.n; ++a)
        for (Vertex b = 1; b <= s.n; ++b)
            if (a != b) holds[{a, b}] = brute_force_check(s, f, caps, {a, b});
    for (Vertex a = 1; a <= s.n; ++a)
        for (Vertex b = a + 1; b <= s.n; ++b)
            if (holds[{a, b}] && holds[{b, a}]) g.set_edge(a, b, EdgeColor::Black);
    return g;
}

}  // namespace tww
