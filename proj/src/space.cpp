#include "gmrg/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gmrg {

void SpaceSpec::finalize() {
    const int n = num_vertices();
    const int m = num_edge_values();
    if (m == 0) throw std::invalid_argument("edge space is empty");
    if (zero < 0 || zero >= m) throw std::invalid_argument("zero element is not a member of edge_space");

    vid_.clear();
    for (int i = 0; i < n; ++i) {
        if (!vid_.emplace(vertex_space[i].id, i).second)
            throw std::invalid_argument("duplicate vertex label: " + vertex_space[i].id);
    }

    // Partial order: reflexive-transitive closure of the declared covers,
    // with the zero element below everything (absence is always allowed).
    le_.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i) le_[i][i] = true;
    for (int i = 0; i < m; ++i) le_[zero][i] = true;
    for (auto [lo, hi] : order_covers) {
        if (lo < 0 || lo >= m || hi < 0 || hi >= m)
            throw std::invalid_argument("edge order pair out of range");
        le_[lo][hi] = true;
    }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            if (le_[i][k])
                for (int j = 0; j < m; ++j)
                    if (le_[k][j]) le_[i][j] = true;

    auto check_symmetric = [](const MasterRule& r, const char* which) {
        for (const auto& [key, val] : r.table) {
            auto it = r.table.find({key.second, key.first});
            if (it != r.table.end() && it->second != val)
                throw std::invalid_argument(std::string(which) + " master table is not symmetric");
        }
    };
    check_symmetric(master_vertex, "vertex");
    check_symmetric(master_attr, "attribute");

    if (master_vertex.kind == MasterKind::grid_threshold) {
        for (const auto& v : vertex_space)
            if (!v.loc) throw std::invalid_argument("grid_threshold master requires vertex locations");
    }
    if (max_order && *max_order <= 0) throw std::invalid_argument("max_order must be positive");
    if (attr_kind == AttrKind::finite && attr_tokens.empty())
        throw std::invalid_argument("finite attribute space is empty");
}

int SpaceSpec::vertex_index(const std::string& id) const {
    auto it = vid_.find(id);
    return it == vid_.end() ? -1 : it->second;
}

int SpaceSpec::edge_value_index(const json& v) const {
    for (int i = 0; i < num_edge_values(); ++i)
        if (edge_values[i] == v) return i;
    return -1;
}

int SpaceSpec::rule_cap(const MasterRule& r, const std::string& a, const std::string& b) const {
    auto it = r.table.find(a <= b ? std::make_pair(a, b) : std::make_pair(b, a));
    if (it != r.table.end()) return it->second;
    it = r.table.find(a <= b ? std::make_pair(b, a) : std::make_pair(a, b));
    if (it != r.table.end()) return it->second;
    return r.table_default;
}

int SpaceSpec::vertex_cap(int u, int v) const {
    switch (master_vertex.kind) {
        case MasterKind::none:
            return -1;
        case MasterKind::grid_threshold: {
            const auto& a = vertex_space[u].loc;
            const auto& b = vertex_space[v].loc;
            bool near = std::abs((*a)[0] - (*b)[0]) <= master_vertex.threshold &&
                        std::abs((*a)[1] - (*b)[1]) <= master_vertex.threshold;
            return near ? -1 : zero;
        }
        case MasterKind::table:
            return rule_cap(master_vertex, vertex_space[u].id, vertex_space[v].id);
    }
    return -1;
}

int SpaceSpec::attr_cap(const json& xu, const json& xv) const {
    if (master_attr.kind != MasterKind::table) return -1;
    if (xu.is_null() || xv.is_null()) return -1;
    auto key = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
    return rule_cap(master_attr, key(xu), key(xv));
}

bool SpaceSpec::edge_allowed(int u, int v, const json& xu, const json& xv, int e) const {
    int cv = vertex_cap(u, v);
    if (cv >= 0 && !edge_le(e, cv)) return false;
    int cx = attr_cap(xu, xv);
    if (cx >= 0 && !edge_le(e, cx)) return false;
    return true;
}

namespace {

MasterRule master_from_json(const SpaceSpec& s, const json& j, bool over_attrs) {
    MasterRule r;
    if (j.is_null()) return r;
    std::string kind = j.value("kind", "table");
    if (kind == "grid_threshold") {
        r.kind = MasterKind::grid_threshold;
        r.threshold = j.at("t").get<double>();
        return r;
    }
    if (kind != "table") throw std::invalid_argument("unknown master rule kind: " + kind);
    r.kind = MasterKind::table;
    if (j.contains("default")) {
        int d = s.edge_value_index(j.at("default"));
        if (d < 0) throw std::invalid_argument("master default is not an edge value");
        r.table_default = d;
    }
    for (const auto& row : j.at("pairs")) {
        auto key = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        std::string a = key(row.at(0)), b = key(row.at(1));
        int val = s.edge_value_index(row.at(2));
        if (val < 0) throw std::invalid_argument("master table value is not an edge value");
        if (!over_attrs) {
            if (s.vertex_index(a) < 0 || s.vertex_index(b) < 0)
                throw std::invalid_argument("master table names unknown vertex: " + a + "," + b);
        }
        r.table[{a, b}] = val;
        r.table[{b, a}] = val;
    }
    return r;
}

}  // namespace

SpaceSpec space_from_json(const json& j) {
    SpaceSpec s;
    for (const auto& entry : j.at("vertex_space")) {
        VertexLabel v;
        if (entry.is_object()) {
            const json& idj = entry.at("id");
            v.id = idj.is_string() ? idj.get<std::string>() : idj.dump();
            if (entry.contains("loc")) v.loc = {{entry["loc"][0].get<int>(), entry["loc"][1].get<int>()}};
            if (entry.contains("color")) v.color = entry["color"].get<std::string>();
        } else {
            v.id = entry.is_string() ? entry.get<std::string>() : entry.dump();
        }
        s.vertex_space.push_back(std::move(v));
    }

    const json& es = j.at("edge_space");
    for (const auto& v : es.at("values")) s.edge_values.push_back(v);
    s.zero = 0;
    {
        int zi = -1;
        for (int i = 0; i < s.num_edge_values(); ++i)
            if (s.edge_values[i] == es.at("zero")) zi = i;
        if (zi < 0) throw std::invalid_argument("zero element is not a member of edge_space");
        s.zero = zi;
    }
    if (es.contains("order")) {
        for (const auto& row : es["order"]) {
            int lo = s.edge_value_index(row.at(0));
            int hi = s.edge_value_index(row.at(1));
            if (lo < 0 || hi < 0) throw std::invalid_argument("edge order names unknown value");
            s.order_covers.emplace_back(lo, hi);
        }
    }

    if (j.contains("attribute_space") && !j["attribute_space"].is_null()) {
        const json& as = j["attribute_space"];
        if (as.is_array()) {
            s.attr_kind = AttrKind::finite;
            for (const auto& t : as) s.attr_tokens.push_back(t);
        } else {
            if (as.value("kind", "") != "real_vector")
                throw std::invalid_argument("unknown attribute space kind");
            s.attr_kind = AttrKind::real_vector;
            s.attr_dim = as.at("dim").get<int>();
            s.attr_distance = as.value("distance", "euclidean");
        }
    }

    if (j.contains("max_order") && !j["max_order"].is_null()) s.max_order = j["max_order"].get<int>();
    if (j.contains("master_vertex")) s.master_vertex = master_from_json(s, j["master_vertex"], false);
    if (j.contains("master_attr")) s.master_attr = master_from_json(s, j["master_attr"], true);

    s.finalize();
    return s;
}

ordered_json space_to_json(const SpaceSpec& s) {
    ordered_json out;
    ordered_json vs = ordered_json::array();
    for (const auto& v : s.vertex_space) {
        if (!v.loc && !v.color) {
            vs.push_back(v.id);
        } else {
            ordered_json o;
            o["id"] = v.id;
            if (v.loc) o["loc"] = {(*v.loc)[0], (*v.loc)[1]};
            if (v.color) o["color"] = *v.color;
            vs.push_back(o);
        }
    }
    out["vertex_space"] = std::move(vs);
    ordered_json es;
    es["values"] = s.edge_values;
    es["zero"] = s.edge_values[s.zero];
    if (!s.order_covers.empty()) {
        ordered_json ord = ordered_json::array();
        for (auto [lo, hi] : s.order_covers) ord.push_back({s.edge_values[lo], s.edge_values[hi]});
        es["order"] = std::move(ord);
    }
    out["edge_space"] = std::move(es);
    if (s.attr_kind == AttrKind::finite) {
        out["attribute_space"] = s.attr_tokens;
    } else if (s.attr_kind == AttrKind::real_vector) {
        out["attribute_space"] = {{"kind", "real_vector"}, {"dim", s.attr_dim}, {"distance", s.attr_distance}};
    }
    if (s.max_order) out["max_order"] = *s.max_order;
    auto master_out = [&](const MasterRule& r) -> ordered_json {
        if (r.kind == MasterKind::grid_threshold)
            return {{"kind", "grid_threshold"}, {"t", r.threshold}};
        ordered_json o;
        o["kind"] = "table";
        ordered_json pairs = ordered_json::array();
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& [key, val] : r.table) {
            auto norm = key.first <= key.second ? key : std::make_pair(key.second, key.first);
            if (!seen.insert(norm).second) continue;
            pairs.push_back({norm.first, norm.second, s.edge_values[val]});
        }
        o["pairs"] = std::move(pairs);
        if (r.table_default >= 0) o["default"] = s.edge_values[r.table_default];
        return o;
    };
    if (s.master_vertex.present()) out["master_vertex"] = master_out(s.master_vertex);
    if (s.master_attr.present()) out["master_attr"] = master_out(s.master_attr);
    return out;
}

}  // namespace gmrg
