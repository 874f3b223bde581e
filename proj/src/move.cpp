#include "gmrg/move.hpp"

#include <stdexcept>

namespace gmrg {

bool move_valid(const SpaceSpec& s, const Graph& g, const Move& m) {
    switch (m.kind) {
        case Move::Kind::add_vertex: {
            if (m.v < 0 || m.v >= s.num_vertices() || g.has_vertex(m.v)) return false;
            if (s.max_order && g.order() >= *s.max_order) return false;
            if (s.attributed()) {
                if (m.attr.is_null()) return false;
                if (s.attr_kind == AttrKind::finite) {
                    bool known = false;
                    for (const auto& t : s.attr_tokens) known = known || t == m.attr;
                    if (!known) return false;
                }
            }
            return true;
        }
        case Move::Kind::delete_vertex: {
            if (!g.has_vertex(m.v)) return false;
            return g.degree(m.v, s.zero) == 0;
        }
        case Move::Kind::set_edge: {
            if (m.u == m.v) return false;
            if (!g.has_vertex(m.u) || !g.has_vertex(m.v)) return false;
            if (m.value < 0 || m.value >= s.num_edge_values()) return false;
            if (g.edge_value(m.u, m.v, s.zero) == m.value) return false;
            return s.edge_allowed(m.u, m.v, g.attr_of(m.u), g.attr_of(m.v), m.value);
        }
    }
    return false;
}

Graph apply_move(const SpaceSpec& s, const Graph& g, const Move& m) {
    if (!move_valid(s, g, m)) throw std::invalid_argument("invalid move");
    Graph out = g;
    switch (m.kind) {
        case Move::Kind::add_vertex: {
            auto it = std::lower_bound(out.verts.begin(), out.verts.end(), m.v);
            size_t pos = it - out.verts.begin();
            out.verts.insert(it, m.v);
            if (s.attributed()) out.attrs.insert(out.attrs.begin() + pos, m.attr);
            break;
        }
        case Move::Kind::delete_vertex: {
            int pos = out.vertex_pos(m.v);
            out.verts.erase(out.verts.begin() + pos);
            if (!out.attrs.empty()) out.attrs.erase(out.attrs.begin() + pos);
            break;
        }
        case Move::Kind::set_edge: {
            std::pair<int, int> key{m.u, m.v};
            auto it = std::find_if(out.edges.begin(), out.edges.end(),
                                   [&](const auto& e) { return e.first == key; });
            if (it != out.edges.end()) out.edges.erase(it);
            if (m.value != s.zero) {
                out.edges.push_back({key, m.value});
                std::sort(out.edges.begin(), out.edges.end());
            }
            break;
        }
    }
    return out;
}

}  // namespace gmrg
