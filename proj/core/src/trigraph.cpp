#include "tww/trigraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace tww {

Trigraph Trigraph::from_edges(int n, const std::vector<std::pair<Vertex, Vertex>>& black) {
    Trigraph g;
    for (Vertex v = 1; v <= n; ++v) g.add_vertex(v);
    for (auto [u, v] : black) g.set_edge(u, v, EdgeColor::Black);
    return g;
}

void Trigraph::add_vertex(Vertex v) {
    if (v <= 0) throw std::invalid_argument("vertex ids must be positive");
    adj_.try_emplace(v);
}

void Trigraph::remove_vertex(Vertex v) {
    auto it = adj_.find(v);
    if (it == adj_.end()) return;
    for (auto& [u, _] : it->second) adj_[u].erase(v);
    adj_.erase(it);
}

void Trigraph::set_edge(Vertex u, Vertex v, EdgeColor color) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("set_edge on missing vertex");
    adj_[u][v] = color;
    adj_[v][u] = color;
}

bool Trigraph::has_edge(Vertex u, Vertex v) const {
    auto it = adj_.find(u);
    return it != adj_.end() && it->second.count(v) > 0;
}

std::optional<EdgeColor> Trigraph::edge_color(Vertex u, Vertex v) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) return std::nullopt;
    auto jt = it->second.find(v);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::vector<Vertex> Trigraph::vertices() const {
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (auto& [v, _] : adj_) out.push_back(v);
    return out;
}

Vertex Trigraph::max_vertex_id() const {
    return adj_.empty() ? 0 : adj_.rbegin()->first;
}

const std::map<Vertex, EdgeColor>& Trigraph::neighbors(Vertex v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) throw std::out_of_range("neighbors of missing vertex");
    return it->second;
}

long long Trigraph::edge_count(EdgeColor color) const {
    long long twice = 0;
    for (auto& [_, nbrs] : adj_)
        for (auto& [__, c] : nbrs)
            if (c == color) ++twice;
    return twice / 2;
}

int Trigraph::red_degree(Vertex v) const {
    int deg = 0;
    for (auto& [_, c] : neighbors(v))
        if (c == EdgeColor::Red) ++deg;
    return deg;
}

int Trigraph::max_red_degree() const {
    int best = 0;
    for (auto& [v, _] : adj_) best = std::max(best, red_degree(v));
    return best;
}

void Trigraph::contract_in_place(Vertex u, Vertex v, Vertex w) {
    if (u == v) throw std::invalid_argument("contract: u == v");
    if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("contract: missing vertex");
    if (has_vertex(w)) throw std::invalid_argument("contract: merged id already in use");

    std::map<Vertex, EdgeColor> merged;
    auto& nu = adj_[u];
    auto& nv = adj_[v];
    for (auto& [x, cu] : nu) {
        if (x == v) continue;
        auto jt = nv.find(x);
        bool both_black = jt != nv.end() && cu == EdgeColor::Black && jt->second == EdgeColor::Black;
        merged[x] = both_black ? EdgeColor::Black : EdgeColor::Red;
    }
    for (auto& [x, _] : nv) {
        if (x == u) continue;
        merged.try_emplace(x, EdgeColor::Red);  // seen from v only: one side absent
    }

    remove_vertex(u);
    remove_vertex(v);
    add_vertex(w);
    for (auto& [x, c] : merged) {
        adj_[w][x] = c;
        adj_[x][w] = c;
    }
}

Trigraph Trigraph::contract(Vertex u, Vertex v, Vertex w) const {
    Trigraph out = *this;
    out.contract_in_place(u, v, w);
    return out;
}

Trigraph Trigraph::complement() const {
    Trigraph out;
    for (auto& [v, _] : adj_) out.add_vertex(v);
    for (auto iu = adj_.begin(); iu != adj_.end(); ++iu) {
        for (auto iv = std::next(iu); iv != adj_.end(); ++iv) {
            auto c = edge_color(iu->first, iv->first);
            if (!c) {
                out.set_edge(iu->first, iv->first, EdgeColor::Black);
            } else if (*c == EdgeColor::Red) {
                out.set_edge(iu->first, iv->first, EdgeColor::Red);
            }
        }
    }
    return out;
}

Trigraph Trigraph::induced(const std::set<Vertex>& keep) const {
    Trigraph out;
    for (Vertex v : keep) {
        if (!has_vertex(v)) throw std::invalid_argument("induced: missing vertex");
        out.add_vertex(v);
    }
    for (Vertex v : keep)
        for (auto& [u, c] : neighbors(v))
            if (u > v && keep.count(u)) out.set_edge(v, u, c);
    return out;
}

VerifyReport verify_sequence(const ContractionSequence& seq, int d) {
    VerifyReport rep;
    Trigraph g = seq.initial;
    rep.per_step_red_degree.push_back(g.max_red_degree());

    auto fail = [&rep](int step, const std::string& msg) {
        rep.valid = false;
        rep.failed_step = step;
        rep.message = msg;
        return rep;
    };

    if (d >= 0 && rep.per_step_red_degree.back() > d)
        return fail(-1, "input trigraph already exceeds red degree bound");

    for (size_t i = 0; i < seq.steps.size(); ++i) {
        const auto& st = seq.steps[i];
        if (st.u == st.v || !g.has_vertex(st.u) || !g.has_vertex(st.v))
            return fail(static_cast<int>(i), "step " + std::to_string(i + 1) + ": bad pair");
        if (g.has_vertex(st.w))
            return fail(static_cast<int>(i), "step " + std::to_string(i + 1) + ": merged id in use");
        g.contract_in_place(st.u, st.v, st.w);
        rep.per_step_red_degree.push_back(g.max_red_degree());
        if (d >= 0 && rep.per_step_red_degree.back() > d)
            return fail(static_cast<int>(i),
                        "step " + std::to_string(i + 1) + ": red degree " +
                            std::to_string(rep.per_step_red_degree.back()) + " exceeds " +
                            std::to_string(d));
    }

    rep.valid = true;
    rep.width = *std::max_element(rep.per_step_red_degree.begin(), rep.per_step_red_degree.end());
    return rep;
}

PartitionView sequence_to_partitions(const ContractionSequence& seq) {
    PartitionView view;
    Trigraph g = seq.initial;

    std::map<Vertex, std::vector<Vertex>> parts;
    for (Vertex v : g.vertices()) parts[v] = {v};

    auto snapshot = [&]() {
        PartitionLevel level;
        level.parts = parts;
        for (Vertex v : g.vertices())
            for (auto& [u, c] : g.neighbors(v))
                if (u > v && c == EdgeColor::Red) level.red_part_edges.emplace_back(v, u);
        view.levels.push_back(std::move(level));
    };

    snapshot();
    for (const auto& st : seq.steps) {
        g.contract_in_place(st.u, st.v, st.w);
        std::vector<Vertex> merged = std::move(parts[st.u]);
        auto& side = parts[st.v];
        merged.insert(merged.end(), side.begin(), side.end());
        std::sort(merged.begin(), merged.end());
        parts.erase(st.u);
        parts.erase(st.v);
        parts[st.w] = std::move(merged);
        snapshot();
    }
    return view;
}

bool homogeneous(const Trigraph& g, const std::set<Vertex>& a, const std::set<Vertex>& b) {
    long long black = 0;
    for (Vertex u : a) {
        for (Vertex v : b) {
            auto c = g.edge_color(u, v);
            if (!c) continue;
            if (*c == EdgeColor::Red) return false;
            ++black;
        }
    }
    return black == 0 || black == static_cast<long long>(a.size()) * static_cast<long long>(b.size());
}

ContractionSequence project_sequence(const ContractionSequence& seq, const std::set<Vertex>& keep) {
    std::map<Vertex, Vertex> relabel;
    Vertex next = 1;
    for (Vertex v : keep) relabel[v] = next++;
    const Vertex m = next - 1;

    ContractionSequence out;
    for (auto& [orig, id] : relabel) out.initial.add_vertex(id);
    for (Vertex v : keep)
        for (auto& [u, c] : seq.initial.neighbors(v))
            if (u > v && keep.count(u)) out.initial.set_edge(relabel[v], relabel[u], c);

    // rep[x] = projected id currently standing for original vertex/merge x,
    // 0 when no kept vertex survives inside x.
    std::map<Vertex, Vertex> rep;
    for (Vertex v : seq.initial.vertices()) rep[v] = keep.count(v) ? relabel[v] : 0;

    Vertex fresh = m;
    for (const auto& st : seq.steps) {
        Vertex pu = rep.at(st.u);
        Vertex pv = rep.at(st.v);
        if (pu != 0 && pv != 0) {
            ++fresh;
            out.steps.push_back({pu, pv, fresh});
            rep[st.w] = fresh;
        } else {
            rep[st.w] = pu != 0 ? pu : pv;
        }
    }
    return out;
}

std::vector<Vertex> twin_order(const ContractionSequence& seq) {
    std::map<Vertex, std::pair<Vertex, Vertex>> children;
    std::set<Vertex> merged_away;
    for (const auto& st : seq.steps) {
        children[st.w] = {st.u, st.v};
        merged_away.insert(st.u);
        merged_away.insert(st.v);
    }

    std::vector<Vertex> roots;
    for (Vertex v : seq.initial.vertices())
        if (!merged_away.count(v)) roots.push_back(v);
    for (auto& [w, _] : children)
        if (!merged_away.count(w)) roots.push_back(w);
    std::sort(roots.begin(), roots.end());

    std::vector<Vertex> order;
    auto dfs = [&](auto&& self, Vertex x) -> void {
        auto it = children.find(x);
        if (it == children.end()) {
            order.push_back(x);
            return;
        }
        self(self, it->second.first);
        self(self, it->second.second);
    };
    for (Vertex r : roots) dfs(dfs, r);
    return order;
}

}  // namespace tww
