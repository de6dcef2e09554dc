#include "tww/exact.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <map>
#include <stdexcept>

namespace tww {

namespace {

int edge_code(const Trigraph& g, Vertex u, Vertex v) {
    auto c = g.edge_color(u, v);
    if (!c) return 0;
    return *c == EdgeColor::Black ? 1 : 2;
}

// iterated refinement by neighborhood color multisets
std::vector<std::vector<Vertex>> refinement_classes(const Trigraph& g) {
    auto verts = g.vertices();
    std::map<Vertex, int> color;
    for (Vertex v : verts) color[v] = 0;
    for (size_t round = 0; round < verts.size(); ++round) {
        std::map<Vertex, std::vector<std::pair<int, int>>> sig;
        for (Vertex v : verts) {
            auto& s = sig[v];
            s.emplace_back(color[v], -1);
            for (auto& [u, c] : g.neighbors(v))
                s.emplace_back(c == EdgeColor::Black ? 1 : 2, color[u]);
            std::sort(s.begin() + 1, s.end());
        }
        std::map<std::vector<std::pair<int, int>>, int> order;
        for (auto& [v, s] : sig) order[s] = 0;
        int next = 0;
        for (auto& [s, id] : order) id = next++;
        bool changed = false;
        for (Vertex v : verts) {
            int c = order[sig[v]];
            if (c != color[v]) changed = true;
            color[v] = c;
        }
        if (!changed) break;
    }
    std::map<int, std::vector<Vertex>> grouped;
    for (Vertex v : verts) grouped[color[v]].push_back(v);
    std::vector<std::vector<Vertex>> classes;
    for (auto& [_, members] : grouped) classes.push_back(members);
    return classes;
}

}  // namespace

std::vector<int> canonical_code(const Trigraph& g) {
    auto classes = refinement_classes(g);
    const int m = g.vertex_count();

    std::vector<Vertex> order;
    for (auto& cls : classes) order.insert(order.end(), cls.begin(), cls.end());

    std::vector<int> best;
    std::vector<size_t> starts;
    size_t off = 0;
    for (auto& cls : classes) {
        starts.push_back(off);
        off += cls.size();
    }

    // minimize over products of within-class permutations
    auto encode = [&]() {
        std::vector<int> code;
        code.reserve(static_cast<size_t>(m) * (m - 1) / 2 + 1);
        code.push_back(m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) code.push_back(edge_code(g, order[i], order[j]));
        return code;
    };
    auto minimize = [&](auto&& self, size_t cls) -> void {
        if (cls == classes.size()) {
            auto code = encode();
            if (best.empty() || code < best) best = std::move(code);
            return;
        }
        auto& members = classes[cls];
        std::sort(order.begin() + starts[cls], order.begin() + starts[cls] + members.size());
        do {
            self(self, cls + 1);
        } while (std::next_permutation(order.begin() + starts[cls],
                                       order.begin() + starts[cls] + members.size()));
    };
    minimize(minimize, 0);
    return best;
}

std::optional<ContractionSequence> cograph_zero_sequence(const Trigraph& g) {
    if (g.edge_count(EdgeColor::Red) != 0) return std::nullopt;
    ContractionSequence seq;
    seq.initial = g;
    Trigraph cur = g;
    Vertex fresh = cur.vertex_count() == 0 ? 0 : cur.max_vertex_id();
    while (cur.vertex_count() > 1) {
        auto verts = cur.vertices();
        std::pair<Vertex, Vertex> twin{0, 0};
        for (size_t i = 0; i < verts.size() && twin.first == 0; ++i) {
            for (size_t j = i + 1; j < verts.size(); ++j) {
                Vertex u = verts[i], v = verts[j];
                bool ok = true;
                for (auto& [x, c] : cur.neighbors(u)) {
                    if (x == v) {
                        if (c == EdgeColor::Red) ok = false;
                    } else if (edge_code(cur, v, x) != (c == EdgeColor::Black ? 1 : 2)) {
                        ok = false;
                    }
                    if (!ok) break;
                }
                if (ok)
                    for (auto& [x, c] : cur.neighbors(v)) {
                        if (x != u && !cur.has_edge(u, x)) {
                            ok = false;
                            break;
                        }
                    }
                if (ok) {
                    twin = {u, v};
                    break;
                }
            }
        }
        if (twin.first == 0) return std::nullopt;
        ++fresh;
        seq.steps.push_back({twin.first, twin.second, fresh});
        cur.contract_in_place(twin.first, twin.second, fresh);
    }
    return seq;
}

namespace {

struct SearchCtx {
    int d;
    std::set<std::vector<int>> failed;
};

bool dfs(Trigraph cur, SearchCtx& ctx, std::vector<ContractionStep>& path, Vertex fresh) {
    if (cur.vertex_count() <= 1) return true;
    auto key = canonical_code(cur);
    if (ctx.failed.count(key)) return false;

    auto verts = cur.vertices();
    for (size_t i = 0; i < verts.size(); ++i) {
        for (size_t j = i + 1; j < verts.size(); ++j) {
            Trigraph next = cur.contract(verts[i], verts[j], fresh + 1);
            if (next.max_red_degree() > ctx.d) continue;
            path.push_back({verts[i], verts[j], fresh + 1});
            if (dfs(std::move(next), ctx, path, fresh + 1)) return true;
            path.pop_back();
        }
    }
    ctx.failed.insert(std::move(key));
    return false;
}

}  // namespace

ExactResult exact_twinwidth(const Trigraph& g, const Caps& caps, int threads) {
    if (g.vertex_count() > caps.exact_n)
        throw CapError("exact search capped at n = " + std::to_string(caps.exact_n));
    if (threads < 1) throw std::invalid_argument("threads must be >= 1");

    ExactResult res;
    res.sequence.initial = g;
    if (g.vertex_count() <= 1) return res;

    if (auto zero = cograph_zero_sequence(g)) {
        res.sequence = std::move(*zero);
        return res;
    }

    const Vertex base = g.max_vertex_id();
    for (int d = std::max(1, g.max_red_degree());; ++d) {
        if (threads == 1 || g.vertex_count() < 3) {
            SearchCtx ctx{d, {}};
            std::vector<ContractionStep> path;
            if (dfs(g, ctx, path, base)) {
                res.width = d;
                res.sequence.steps = std::move(path);
                return res;
            }
            continue;
        }

        // explore first moves in parallel; every branch runs to completion
        // and the lexicographically first success wins, so the witness
        // matches the serial one
        auto verts = g.vertices();
        std::vector<std::pair<Vertex, Vertex>> moves;
        for (size_t i = 0; i < verts.size(); ++i)
            for (size_t j = i + 1; j < verts.size(); ++j) moves.emplace_back(verts[i], verts[j]);

        std::atomic<size_t> next_move{0};
        std::vector<std::optional<std::vector<ContractionStep>>> outcome(moves.size());
        std::vector<std::future<void>> workers;
        auto worker = [&]() {
            for (;;) {
                size_t i = next_move.fetch_add(1);
                if (i >= moves.size()) return;
                auto [u, v] = moves[i];
                Trigraph next = g.contract(u, v, base + 1);
                std::vector<ContractionStep> path{{u, v, base + 1}};
                SearchCtx ctx{d, {}};
                if (next.max_red_degree() <= ctx.d && dfs(std::move(next), ctx, path, base + 1))
                    outcome[i] = std::move(path);
            }
        };
        for (int t = 0; t < threads; ++t)
            workers.push_back(std::async(std::launch::async, worker));
        for (auto& w : workers) w.get();

        for (size_t i = 0; i < moves.size(); ++i) {
            if (outcome[i]) {
                res.width = d;
                res.sequence.steps = std::move(*outcome[i]);
                return res;
            }
        }
    }
}

ContractionSequence greedy_sequence(const Trigraph& g) {
    ContractionSequence seq;
    seq.initial = g;
    Trigraph cur = g;
    Vertex fresh = cur.vertex_count() == 0 ? 0 : cur.max_vertex_id();
    while (cur.vertex_count() > 1) {
        auto verts = cur.vertices();
        std::pair<Vertex, Vertex> best{0, 0};
        std::pair<int, long long> best_cost{0, 0};
        for (size_t i = 0; i < verts.size(); ++i) {
            for (size_t j = i + 1; j < verts.size(); ++j) {
                Trigraph next = cur.contract(verts[i], verts[j], fresh + 1);
                std::pair<int, long long> cost{next.max_red_degree(),
                                               next.edge_count(EdgeColor::Red)};
                if (best.first == 0 || cost < best_cost) {
                    best = {verts[i], verts[j]};
                    best_cost = cost;
                }
            }
        }
        ++fresh;
        seq.steps.push_back({best.first, best.second, fresh});
        cur.contract_in_place(best.first, best.second, fresh);
    }
    return seq;
}

ContractionSequence apex_sequence(const Trigraph& g, const ContractionSequence& seqG,
                                  const std::set<Vertex>& X) {
    if (seqG.initial != g) throw std::invalid_argument("apex_sequence: sequence is not for G");
    auto report = verify_sequence(seqG, -1);
    if (!report.valid)
        throw std::invalid_argument("apex_sequence: invalid sequence: " + report.message);
    if (static_cast<int>(seqG.steps.size()) != std::max(0, g.vertex_count() - 1))
        throw std::invalid_argument("apex_sequence: sequence must contract G to one vertex");
    for (Vertex x : X)
        if (!g.has_vertex(x)) throw std::invalid_argument("apex_sequence: X leaves the graph");

    ContractionSequence out;
    out.initial = g;
    const Vertex apex =
        (g.vertex_count() == 0 ? 0 : std::max(g.max_vertex_id(), Vertex(g.vertex_count()))) + 1;
    out.initial.add_vertex(apex);
    for (Vertex x : X) out.initial.set_edge(apex, x, EdgeColor::Black);

    // each original-side blob is tracked as its X part and its complement part
    std::map<Vertex, std::pair<Vertex, Vertex>> split;
    for (Vertex v : g.vertices())
        split[v] = X.count(v) ? std::pair<Vertex, Vertex>{v, 0} : std::pair<Vertex, Vertex>{0, v};

    Vertex fresh = apex;
    auto combine = [&](Vertex a, Vertex b) {
        if (a == 0) return b;
        if (b == 0) return a;
        ++fresh;
        out.steps.push_back({a, b, fresh});
        return fresh;
    };

    Vertex root = 0;
    for (auto& step : seqG.steps) {
        auto [ux, uy] = split.at(step.u);
        auto [vx, vy] = split.at(step.v);
        split.erase(step.u);
        split.erase(step.v);
        split[step.w] = {combine(ux, vx), combine(uy, vy)};
        root = step.w;
    }

    Vertex xs = 0, ys = 0;
    if (root != 0) {
        std::tie(xs, ys) = split.at(root);
    } else if (!split.empty()) {
        std::tie(xs, ys) = split.begin()->second;  // single-vertex G, no steps
    }
    combine(combine(xs, apex), ys);
    return out;
}

}  // namespace tww
