#pragma once

// Space declarations: the vertex space, the edge space with its zero
// element and partial order, the optional attribute space, and the
// optional master interaction functions that carve the graph space.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gmrg {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

struct VertexLabel {
    std::string id;
    std::optional<std::array<int, 2>> loc;
    std::optional<std::string> color;
};

enum class MasterKind { none, grid_threshold, table };

// Master interaction function over vertex labels or attribute tokens.
// Values are edge-space indices; a missing entry resolves to the default,
// and a default of -1 means unconstrained.
struct MasterRule {
    MasterKind kind = MasterKind::none;
    double threshold = 0.0;
    std::map<std::pair<std::string, std::string>, int> table;
    int table_default = -1;

    bool present() const { return kind != MasterKind::none; }
};

enum class AttrKind { none, finite, real_vector };

struct SpaceSpec {
    std::vector<VertexLabel> vertex_space;
    std::vector<json> edge_values;
    int zero = 0;
    std::vector<std::pair<int, int>> order_covers;  // declared lo <= hi pairs

    AttrKind attr_kind = AttrKind::none;
    std::vector<json> attr_tokens;
    int attr_dim = 0;
    std::string attr_distance;

    std::optional<int> max_order;
    MasterRule master_vertex;
    MasterRule master_attr;

    // Validates invariants and builds the order closure and the id index.
    // Must be called once after the fields are filled in.
    void finalize();

    int num_vertices() const { return static_cast<int>(vertex_space.size()); }
    int num_edge_values() const { return static_cast<int>(edge_values.size()); }
    bool attributed() const { return attr_kind != AttrKind::none; }
    int num_attr_tokens() const { return static_cast<int>(attr_tokens.size()); }

    int vertex_index(const std::string& id) const;  // -1 when unknown
    int edge_value_index(const json& v) const;      // -1 when unknown

    // a <= b in the declared partial order (zero is a global minimum).
    bool edge_le(int a, int b) const { return le_[a][b]; }

    // Master caps as edge-value indices; -1 means unconstrained.
    int vertex_cap(int u, int v) const;
    int attr_cap(const json& xu, const json& xv) const;

    // Whether edge value e is admissible between u and v with the given
    // attributes (pass null json when unattributed).
    bool edge_allowed(int u, int v, const json& xu, const json& xv, int e) const;

private:
    std::vector<std::vector<bool>> le_;
    std::map<std::string, int> vid_;
    int rule_cap(const MasterRule& r, const std::string& a, const std::string& b) const;
};

SpaceSpec space_from_json(const json& j);
ordered_json space_to_json(const SpaceSpec& s);

}  // namespace gmrg
