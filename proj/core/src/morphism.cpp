#include "tww/morphism.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tww {

namespace {

int pow3(int e) {
    int r = 1;
    while (e-- > 0) r *= 3;
    return r;
}

}  // namespace

int MorphismTree::depth(int node) const {
    int d = 0;
    for (int cur = node; nodes[cur].parent >= 0; cur = nodes[cur].parent) ++d;
    return d;
}

int MorphismTree::max_depth() const {
    int best = 0;
    for (int i = 0; i < node_count(); ++i) best = std::max(best, depth(i));
    return best;
}

std::vector<Vertex> MorphismTree::tuple(int node) const {
    std::vector<Vertex> out;
    for (int cur = node; nodes[cur].parent >= 0; cur = nodes[cur].parent)
        out.push_back(nodes[cur].vertex);
    std::reverse(out.begin(), out.end());
    return out;
}

MorphismTree MorphismTree::complete(const std::vector<Vertex>& domain, int l) {
    MorphismTree t;
    std::vector<std::pair<int, int>> queue{{0, 0}};  // node, depth
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [node, d] = queue[qi];
        if (d == l) continue;
        for (Vertex v : domain) {
            int id = t.node_count();
            t.nodes.push_back({node, v, -1, {}});
            t.nodes[node].children.push_back(id);
            queue.push_back({id, d + 1});
        }
    }
    return t;
}

MorphismTree MorphismTree::path(Vertex v, int l) {
    MorphismTree t;
    int cur = 0;
    for (int d = 0; d < l; ++d) {
        int id = t.node_count();
        t.nodes.push_back({cur, v, -1, {}});
        t.nodes[cur].children.push_back(id);
        cur = id;
    }
    return t;
}

std::vector<int> node_profile(const MorphismTree& t, int node, const ProfileContext& ctx) {
    if (node <= 0 || node >= t.node_count())
        throw std::invalid_argument("profiles are defined for non-root nodes");
    const BinaryStructure& s = *ctx.s;
    int r = static_cast<int>(s.relations.size());
    if (r > 14) throw std::invalid_argument("too many binary relations to pack a profile");
    std::vector<Vertex> tup = t.tuple(node);
    Vertex v = tup.back();

    std::vector<int> p;
    p.reserve(3 + tup.size() - 1);
    p.push_back(ctx.part_of ? ctx.part_of(v) : 0);
    p.push_back(static_cast<int>(s.unary_signature(v)));
    int loops = 0;
    for (int i = 0; i < r; ++i)
        if (s.has_pair(i, v, v)) loops |= 1 << i;
    p.push_back(loops);
    for (size_t a = 0; a + 1 < tup.size(); ++a) {
        Vertex anc = tup[a];
        int word = anc == v ? 1 : 0;
        for (int i = 0; i < r; ++i) {
            if (s.has_pair(i, anc, v)) word |= 1 << (1 + 2 * i);
            if (s.has_pair(i, v, anc)) word |= 1 << (2 + 2 * i);
        }
        p.push_back(word);
    }
    return p;
}

int CodeTable::intern(const std::vector<int>& profile, std::vector<int> child_codes) {
    auto key = std::make_pair(profile, std::move(child_codes));
    auto it = table_.find(key);
    if (it != table_.end()) return it->second;
    int id = static_cast<int>(table_.size());
    table_.emplace(std::move(key), id);
    return id;
}

std::vector<int> subtree_codes(const MorphismTree& t, const ProfileContext& ctx, CodeTable& table) {
    std::vector<int> codes(t.nodes.size(), -1);
    std::vector<std::pair<int, int>> stack{{0, 0}};  // node, next child index
    while (!stack.empty()) {
        auto [node, ci] = stack.back();
        const auto& kids = t.nodes[node].children;
        if (ci < static_cast<int>(kids.size())) {
            ++stack.back().second;
            stack.push_back({kids[ci], 0});
            continue;
        }
        std::vector<int> child_codes;
        child_codes.reserve(kids.size());
        for (int c : kids) child_codes.push_back(codes[c]);
        std::sort(child_codes.begin(), child_codes.end());
        std::vector<int> prof = node == 0 ? std::vector<int>{} : node_profile(t, node, ctx);
        codes[node] = table.intern(prof, std::move(child_codes));
        stack.pop_back();
    }
    return codes;
}

MorphismTree reduce(const MorphismTree& t, const ProfileContext& ctx) {
    // Codes of fully reduced subtrees, bottom-up: a node's code is built from
    // its surviving children only, so one pass reaches the fixpoint. Equal
    // codes of reduced subtrees certify equivalent siblings.
    CodeTable table;
    std::vector<int> code(t.nodes.size(), -1);
    std::vector<std::vector<int>> kept(t.nodes.size());
    std::vector<std::pair<int, int>> stack{{0, 0}};  // node, next child index
    while (!stack.empty()) {
        auto [node, ci] = stack.back();
        const auto& kids = t.nodes[node].children;
        if (ci < static_cast<int>(kids.size())) {
            ++stack.back().second;
            stack.push_back({kids[ci], 0});
            continue;
        }
        // smallest-index child per reduced code wins
        std::map<int, int> best;
        for (int c : kids) {
            auto [it, fresh] = best.emplace(code[c], c);
            if (!fresh && c < it->second) it->second = c;
        }
        std::vector<int> child_codes;
        for (int c : kids)
            if (best.at(code[c]) == c) {
                kept[node].push_back(c);
                child_codes.push_back(code[c]);
            }
        std::sort(child_codes.begin(), child_codes.end());
        std::vector<int> prof = node == 0 ? std::vector<int>{} : node_profile(t, node, ctx);
        code[node] = table.intern(prof, std::move(child_codes));
        stack.pop_back();
    }

    MorphismTree out;
    out.nodes[0].origin = t.nodes[0].origin;
    std::vector<std::pair<int, int>> queue{{0, 0}};  // old node -> new node
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [on, nn] = queue[qi];
        for (int c : kept[on]) {
            int id = out.node_count();
            out.nodes.push_back({nn, t.nodes[c].vertex, t.nodes[c].origin, {}});
            out.nodes[nn].children.push_back(id);
            queue.push_back({c, id});
        }
    }
    return out;
}

namespace {

// atom evaluation against the profiles of the current root-to-leaf path;
// chain[d] is the profile of the path node at depth d+1
struct MinimaxEval {
    const MorphismTree& t;
    const PrenexFormula& f;
    const BinaryStructure& s;
    const ProfileContext& ctx;
    int l;
    std::vector<std::vector<int>> chain;

    void check_atoms(const BodyNode& b) const {
        switch (b.kind) {
            case BodyNode::Kind::And:
            case BodyNode::Kind::Or:
            case BodyNode::Kind::Not:
                for (const BodyNode& k : b.kids) check_atoms(k);
                return;
            case BodyNode::Kind::Eq:
                break;
            case BodyNode::Kind::Rel:
                if (s.relation_index(b.name) < 0)
                    throw std::invalid_argument("unknown relation '" + b.name + "'");
                break;
            case BodyNode::Kind::Unary:
                if (s.unary_index(b.name) < 0)
                    throw std::invalid_argument("unknown unary relation '" + b.name + "'");
                break;
        }
        if (b.a < 0 || b.a >= l || (b.kind != BodyNode::Kind::Unary && (b.b < 0 || b.b >= l)))
            throw std::invalid_argument("formula body references a slot outside the prefix");
    }

    bool atom(const BodyNode& b) const {
        int a = b.a, c = b.b;
        switch (b.kind) {
            case BodyNode::Kind::Eq:
                if (a == c) return true;
                if (a > c) std::swap(a, c);
                return chain[c][3 + a] & 1;
            case BodyNode::Kind::Rel: {
                int ri = s.relation_index(b.name);
                if (a == c) return chain[a][2] >> ri & 1;
                // the deeper profile holds both orientations toward the ancestor
                if (a < c) return chain[c][3 + a] >> (1 + 2 * ri) & 1;
                return chain[a][3 + c] >> (2 + 2 * ri) & 1;
            }
            case BodyNode::Kind::Unary:
                return chain[a][1] >> s.unary_index(b.name) & 1;
            default:
                throw std::logic_error("atom expected");
        }
    }

    bool body(const BodyNode& b) const {
        switch (b.kind) {
            case BodyNode::Kind::And:
                for (const BodyNode& k : b.kids)
                    if (!body(k)) return false;
                return true;
            case BodyNode::Kind::Or:
                for (const BodyNode& k : b.kids)
                    if (body(k)) return true;
                return false;
            case BodyNode::Kind::Not:
                return !body(b.kids[0]);
            default:
                return atom(b);
        }
    }

    bool eval(int node, int depth) {
        if (depth == l) {
            if (!t.nodes[node].children.empty())
                throw std::invalid_argument("tree is deeper than the quantifier prefix");
            return body(f.body);
        }
        if (t.nodes[node].children.empty())
            throw std::invalid_argument("leaf above the quantifier depth: tree does not cover " +
                                        std::to_string(l) + " variables");
        bool ex = f.exists[depth];
        for (int c : t.nodes[node].children) {
            chain.push_back(node_profile(t, c, ctx));
            bool v = eval(c, depth + 1);
            chain.pop_back();
            if (ex && v) return true;
            if (!ex && !v) return false;
        }
        return !ex;
    }
};

}  // namespace

bool minimax_eval(const MorphismTree& t, const PrenexFormula& f, const BinaryStructure& s) {
    if (f.free_count() != 0)
        throw std::invalid_argument("minimax evaluation needs a sentence, got free variables");
    if (f.depth() == 0) throw std::invalid_argument("sentence has no quantifiers");
    ProfileContext ctx{&s, {}};
    MinimaxEval ev{t, f, s, ctx, f.depth(), {}};
    ev.check_atoms(f.body);
    return ev.eval(0, 0);
}

SequenceGraphView sequence_graph(const std::vector<int>& parts, int l, const DistanceOracle& dist) {
    int m = static_cast<int>(parts.size());
    SequenceGraphView view;
    view.adj.assign(m, std::vector<char>(m, 0));
    for (int k = 1; k < m; ++k) {
        int exp = l - k - 1;
        int thr = exp >= 0 ? pow3(exp) : 0;
        for (int j = 0; j < k; ++j) {
            if (dist(parts[j], parts[k]) <= thr) view.adj[j][k] = view.adj[k][j] = 1;
        }
    }
    view.component.assign(m, -1);
    int comps = 0;
    for (int i = 0; i < m; ++i) {
        if (view.component[i] >= 0) continue;
        int id = comps++;
        std::vector<int> stack{i};
        view.component[i] = id;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y = 0; y < m; ++y)
                if (view.adj[x][y] && view.component[y] < 0) {
                    view.component[y] = id;
                    stack.push_back(y);
                }
        }
    }
    view.local_root.assign(m, 0);
    std::vector<int> root_of(comps, -1);
    for (int i = 0; i < m; ++i)
        if (root_of[view.component[i]] < 0) root_of[view.component[i]] = parts[i];
    for (int i = 0; i < m; ++i) view.local_root[i] = root_of[view.component[i]];
    view.connected = comps <= 1;
    return view;
}

namespace {

struct ShuffleBuilder {
    const std::vector<RootedTree>& inputs;
    int l;
    const std::function<bool(const std::vector<Vertex>&, const std::vector<int>&)>& keep;
    MorphismTree out;
    std::vector<int> pos;
    std::vector<Vertex> tuple;
    std::vector<int> roots;

    void rec(int parent) {
        if (static_cast<int>(tuple.size()) == l) return;
        for (size_t i = 0; i < inputs.size(); ++i) {
            const MorphismTree& in = *inputs[i].tree;
            for (int c : in.nodes[pos[i]].children) {
                tuple.push_back(in.nodes[c].vertex);
                roots.push_back(inputs[i].root_part);
                if (!keep || keep(tuple, roots)) {
                    int id = out.node_count();
                    out.nodes.push_back({parent, tuple.back(), static_cast<int>(i), {}});
                    out.nodes[parent].children.push_back(id);
                    int save = pos[i];
                    pos[i] = c;
                    rec(id);
                    pos[i] = save;
                }
                tuple.pop_back();
                roots.pop_back();
            }
        }
    }
};

}  // namespace

MorphismTree shuffle_keep(
    const std::vector<RootedTree>& inputs, int l,
    const std::function<bool(const std::vector<Vertex>&, const std::vector<int>&)>& keep) {
    ShuffleBuilder b{inputs, l, keep, {}, std::vector<int>(inputs.size(), 0), {}, {}};
    b.rec(0);
    return std::move(b.out);
}

MorphismTree shuffle_l(const std::vector<const MorphismTree*>& trees, int l) {
    std::vector<RootedTree> inputs;
    inputs.reserve(trees.size());
    for (const MorphismTree* t : trees) inputs.push_back({0, t});
    return shuffle_keep(inputs, l, {});
}

bool connected_rooted_at(const std::vector<Vertex>& tuple, int part, int l,
                         const std::function<int(Vertex)>& part_of, const DistanceOracle& dist) {
    if (tuple.empty()) return true;
    std::vector<int> parts;
    parts.reserve(tuple.size());
    for (Vertex v : tuple) parts.push_back(part_of(v));
    if (parts[0] != part) return false;
    return sequence_graph(parts, l, dist).connected;
}

MorphismTree restrict_to_root(const MorphismTree& t, int part, int l,
                              const std::function<int(Vertex)>& part_of,
                              const DistanceOracle& dist) {
    MorphismTree out;
    out.nodes[0].origin = t.nodes[0].origin;
    std::vector<std::pair<int, int>> queue{{0, 0}};  // old node -> new node
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [on, nn] = queue[qi];
        for (int c : t.nodes[on].children) {
            if (!connected_rooted_at(t.tuple(c), part, l, part_of, dist)) continue;
            int id = out.node_count();
            out.nodes.push_back({nn, t.nodes[c].vertex, t.nodes[c].origin, {}});
            out.nodes[nn].children.push_back(id);
            queue.push_back({c, id});
        }
    }
    return out;
}

MorphismTree pruned_shuffle(const std::vector<RootedTree>& inputs, int l,
                            const std::function<int(Vertex)>& part_of, const DistanceOracle& dist,
                            bool audit) {
    if (audit) {
        for (const RootedTree& in : inputs) {
            for (int node = 1; node < in.tree->node_count(); ++node) {
                if (!connected_rooted_at(in.tree->tuple(node), in.root_part, l, part_of, dist))
                    throw std::invalid_argument(
                        "pruned shuffle input is not rooted at its declared part");
            }
        }
    }
    auto keep = [&](const std::vector<Vertex>& tuple, const std::vector<int>& roots) {
        std::vector<int> parts;
        parts.reserve(tuple.size());
        for (Vertex v : tuple) parts.push_back(part_of(v));
        SequenceGraphView sg = sequence_graph(parts, l, dist);
        for (size_t e = 0; e < roots.size(); ++e)
            if (sg.local_root[e] != roots[e]) return false;
        return true;
    };
    return shuffle_keep(inputs, l, keep);
}

}  // namespace tww
