#pragma once

// Shared fixtures for the test suites.

#include <string>
#include <vector>

#include "gmrg/enumerate.hpp"
#include "gmrg/graph.hpp"

namespace gmrg::testing {

// Lambda_V = {"1".."n"}, Lambda_E = {0,1} with zero 0.
inline SpaceSpec binary_space(int n, int max_order = -1) {
    SpaceSpec s;
    for (int i = 1; i <= n; ++i) s.vertex_space.push_back({std::to_string(i), std::nullopt, std::nullopt});
    s.edge_values = {0, 1};
    s.zero = 0;
    s.order_covers = {{0, 1}};
    if (max_order > 0) s.max_order = max_order;
    s.finalize();
    return s;
}

inline Graph graph_of(const SpaceSpec& s, const std::vector<std::string>& ids,
                      const std::vector<std::pair<std::string, std::string>>& edges = {},
                      const std::vector<json>& attrs = {}) {
    std::vector<int> verts;
    for (const auto& id : ids) verts.push_back(s.vertex_index(id));
    std::vector<std::pair<std::pair<int, int>, int>> es;
    int one = s.zero == 0 ? 1 : 0;
    for (const auto& [u, v] : edges) es.push_back({{s.vertex_index(u), s.vertex_index(v)}, one});
    return make_graph(s, verts, attrs, es);
}

}  // namespace gmrg::testing
