#include "gmrg/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace gmrg {

bool Graph::has_vertex(int v) const { return std::binary_search(verts.begin(), verts.end(), v); }

int Graph::vertex_pos(int v) const {
    auto it = std::lower_bound(verts.begin(), verts.end(), v);
    if (it == verts.end() || *it != v) return -1;
    return static_cast<int>(it - verts.begin());
}

const json& Graph::attr_of(int v) const {
    static const json null_attr;
    int pos = vertex_pos(v);
    if (pos < 0 || attrs.empty()) return null_attr;
    return attrs[pos];
}

int Graph::edge_value(int u, int v, int zero) const {
    if (u > v) std::swap(u, v);
    for (const auto& [pr, val] : edges)
        if (pr.first == u && pr.second == v) return val;
    return zero;
}

int Graph::degree(int v, int) const {
    int d = 0;
    for (const auto& [pr, val] : edges)
        if (pr.first == v || pr.second == v) ++d;
    return d;
}

bool graph_less(const Graph& a, const Graph& b) {
    if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
    if (a.verts != b.verts) return a.verts < b.verts;
    if (a.edges != b.edges) return a.edges < b.edges;
    if (a.attrs.size() != b.attrs.size()) return a.attrs.size() < b.attrs.size();
    for (size_t i = 0; i < a.attrs.size(); ++i)
        if (a.attrs[i] != b.attrs[i]) return a.attrs[i].dump() < b.attrs[i].dump();
    return false;
}

std::string canon_key(const Graph& g) {
    std::string k = "V";
    for (int v : g.verts) {
        k += std::to_string(v);
        k += ',';
    }
    if (!g.attrs.empty()) {
        k += "|A";
        for (const auto& a : g.attrs) {
            k += a.dump();
            k += ',';
        }
    }
    k += "|E";
    for (const auto& [pr, val] : g.edges) {
        k += std::to_string(pr.first);
        k += '-';
        k += std::to_string(pr.second);
        k += ':';
        k += std::to_string(val);
        k += ',';
    }
    return k;
}

Graph make_graph(const SpaceSpec& s, std::vector<int> verts, std::vector<json> attrs,
                 std::vector<std::pair<std::pair<int, int>, int>> edges) {
    Graph g;
    std::vector<size_t> perm(verts.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) { return verts[a] < verts[b]; });

    g.verts.reserve(verts.size());
    for (size_t i : perm) {
        int v = verts[i];
        if (v < 0 || v >= s.num_vertices()) throw std::invalid_argument("vertex index out of range");
        if (!g.verts.empty() && g.verts.back() == v) throw std::invalid_argument("duplicate vertex");
        g.verts.push_back(v);
    }
    if (s.max_order && g.order() > *s.max_order)
        throw std::invalid_argument("graph order exceeds the declared max order");

    if (s.attributed()) {
        if (attrs.size() != verts.size() && !verts.empty())
            throw std::invalid_argument("attributed space requires a total attribute map");
        g.attrs.reserve(attrs.size());
        for (size_t i : perm) {
            const json& a = attrs[i];
            if (s.attr_kind == AttrKind::finite) {
                bool known = false;
                for (const auto& t : s.attr_tokens) known = known || t == a;
                if (!known) throw std::invalid_argument("attribute value outside the attribute space");
            }
            g.attrs.push_back(a);
        }
    } else if (!attrs.empty()) {
        throw std::invalid_argument("attributes given but the space has no attribute space");
    }

    for (auto [pr, val] : edges) {
        auto [u, v] = pr;
        if (u == v) throw std::invalid_argument("self loops are not allowed");
        if (u > v) std::swap(u, v);
        if (!g.has_vertex(u) || !g.has_vertex(v))
            throw std::invalid_argument("edge endpoint is not a vertex of the graph");
        if (val < 0 || val >= s.num_edge_values()) throw std::invalid_argument("edge value out of range");
        if (val == s.zero) continue;
        g.edges.push_back({{u, v}, val});
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (size_t i = 1; i < g.edges.size(); ++i)
        if (g.edges[i].first == g.edges[i - 1].first) throw std::invalid_argument("duplicate edge pair");

    if (!respects_master(s, g))
        throw std::invalid_argument("graph violates a master interaction function");
    return g;
}

bool respects_master(const SpaceSpec& s, const Graph& g) {
    if (!s.master_vertex.present() && !s.master_attr.present()) return true;
    for (const auto& [pr, val] : g.edges) {
        auto [u, v] = pr;
        if (!s.edge_allowed(u, v, g.attr_of(u), g.attr_of(v), val)) return false;
    }
    return true;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vsub) {
    std::vector<int> vs = vsub;
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (int v : vs)
        if (!g.has_vertex(v)) throw std::invalid_argument("induced set is not a subset of V(G)");

    Graph out;
    out.verts = vs;
    if (!g.attrs.empty()) {
        out.attrs.reserve(vs.size());
        for (int v : vs) out.attrs.push_back(g.attrs[g.vertex_pos(v)]);
    }
    for (const auto& e : g.edges) {
        if (std::binary_search(vs.begin(), vs.end(), e.first.first) &&
            std::binary_search(vs.begin(), vs.end(), e.first.second))
            out.edges.push_back(e);
    }
    return out;
}

Graph project(const SpaceSpec& s, const Graph& g, const std::vector<int>& V) {
    std::vector<int> keep;
    for (int v : V) {
        if (v < 0 || v >= s.num_vertices())
            throw std::invalid_argument("projection set contains labels outside the vertex space");
        if (g.has_vertex(v)) keep.push_back(v);
    }
    return induced_subgraph(g, keep);
}

std::vector<Graph> subgraphs(const Graph& g, std::optional<int> k) {
    const int n = g.order();
    std::vector<Graph> out;
    if (k && (*k < 0 || *k > n)) return out;

    std::vector<int> subset;
    auto emit = [&]() { out.push_back(induced_subgraph(g, subset)); };

    // Subsets in (size, lexicographic) order.
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        for (int i = start; i <= n - remaining; ++i) {
            subset.push_back(g.verts[i]);
            self(self, i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    if (k) {
        rec(rec, 0, *k);
    } else {
        for (int size = 0; size <= n; ++size) rec(rec, 0, size);
    }
    return out;
}

bool is_connected(const Graph& g) {
    const int n = g.order();
    if (n <= 1) return true;
    std::vector<int> stack{0};
    std::vector<bool> seen(n, false);
    seen[0] = true;
    int found = 1;
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        int v = g.verts[i];
        for (const auto& [pr, val] : g.edges) {
            int other = -1;
            if (pr.first == v) other = pr.second;
            else if (pr.second == v) other = pr.first;
            if (other < 0) continue;
            int j = g.vertex_pos(other);
            if (!seen[j]) {
                seen[j] = true;
                ++found;
                stack.push_back(j);
            }
        }
    }
    return found == n;
}

ordered_json graph_to_json(const SpaceSpec& s, const Graph& g) {
    ordered_json out;
    ordered_json vs = ordered_json::array();
    for (int i = 0; i < g.order(); ++i) {
        int v = g.verts[i];
        ordered_json o;
        o["id"] = s.vertex_space[v].id;
        if (!g.attrs.empty() && !g.attrs[i].is_null()) o["attr"] = g.attrs[i];
        if (s.vertex_space[v].loc) o["loc"] = {(*s.vertex_space[v].loc)[0], (*s.vertex_space[v].loc)[1]};
        vs.push_back(std::move(o));
    }
    out["vertices"] = std::move(vs);
    ordered_json es = ordered_json::array();
    for (const auto& [pr, val] : g.edges) {
        ordered_json o;
        o["u"] = s.vertex_space[pr.first].id;
        o["v"] = s.vertex_space[pr.second].id;
        o["val"] = s.edge_values[val];
        es.push_back(std::move(o));
    }
    out["edges"] = std::move(es);
    return out;
}

Graph graph_from_json(const SpaceSpec& s, const json& j) {
    std::vector<int> verts;
    std::vector<json> attrs;
    for (const auto& entry : j.at("vertices")) {
        std::string id;
        json attr;
        if (entry.is_object()) {
            const json& idj = entry.at("id");
            id = idj.is_string() ? idj.get<std::string>() : idj.dump();
            if (entry.contains("attr")) attr = entry["attr"];
        } else {
            id = entry.is_string() ? entry.get<std::string>() : entry.dump();
        }
        int v = s.vertex_index(id);
        if (v < 0) throw std::invalid_argument("unknown vertex id: " + id);
        verts.push_back(v);
        attrs.push_back(attr);
    }
    if (!s.attributed()) attrs.clear();

    std::vector<std::pair<std::pair<int, int>, int>> edges;
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            const json& uj = e.at("u");
            const json& vj = e.at("v");
            int u = s.vertex_index(uj.is_string() ? uj.get<std::string>() : uj.dump());
            int v = s.vertex_index(vj.is_string() ? vj.get<std::string>() : vj.dump());
            if (u < 0 || v < 0) throw std::invalid_argument("edge names unknown vertex id");
            int val = s.edge_value_index(e.at("val"));
            if (val < 0) throw std::invalid_argument("edge value outside the edge space");
            edges.push_back({{u, v}, val});
        }
    }
    return make_graph(s, std::move(verts), std::move(attrs), std::move(edges));
}

}  // namespace gmrg
