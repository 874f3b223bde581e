#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "gmrg/errors.hpp"
#include "gmrg/iso.hpp"
#include "gmrg/rng.hpp"
#include "helpers.hpp"

using namespace gmrg;
using namespace gmrg::testing;

namespace {

Graph random_graph(const SpaceSpec& s, Rng& rng, int max_verts) {
    std::vector<int> verts;
    for (int v = 0; v < std::min(max_verts, s.num_vertices()); ++v)
        if (rng.next_unit() < 0.6) verts.push_back(v);
    std::vector<std::pair<std::pair<int, int>, int>> edges;
    for (size_t i = 0; i < verts.size(); ++i)
        for (size_t j = i + 1; j < verts.size(); ++j)
            if (rng.next_unit() < 0.4) edges.push_back({{verts[i], verts[j]}, 1});
    return make_graph(s, verts, {}, edges);
}

}  // namespace

TEST_CASE("plain isomorphism") {
    SpaceSpec s = binary_space(4);
    Graph path123 = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
    Graph path213 = graph_of(s, {"1", "2", "4"}, {{"1", "2"}, {"1", "4"}});  // relabeled 3-path
    Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"2", "3"}, {"1", "3"}});

    CHECK(isomorphic(s, path123, path123, IsoOrder::plain));
    CHECK(isomorphic(s, path123, path213, IsoOrder::plain));
    CHECK_FALSE(isomorphic(s, path123, tri, IsoOrder::plain));
    CHECK_FALSE(isomorphic(s, path123, graph_of(s, {"1", "2"}), IsoOrder::plain));
    CHECK(isomorphic(s, Graph{}, Graph{}, IsoOrder::plain));
}

TEST_CASE("first-order isomorphism respects attributes") {
    SpaceSpec s = binary_space(3);
    s.attr_kind = AttrKind::finite;
    s.attr_tokens = {"r", "b"};
    s.finalize();
    Graph g1 = make_graph(s, {0, 1}, {"r", "b"}, {{{0, 1}, 1}});
    Graph g2 = make_graph(s, {1, 2}, {"b", "r"}, {{{1, 2}, 1}});
    Graph g3 = make_graph(s, {1, 2}, {"r", "r"}, {{{1, 2}, 1}});
    CHECK(isomorphic(s, g1, g2, IsoOrder::first));
    CHECK_FALSE(isomorphic(s, g1, g3, IsoOrder::first));
    // plain order ignores attributes
    CHECK(isomorphic(s, g1, g3, IsoOrder::plain));
    Graph bare;
    bare.verts = {0};
    CHECK_THROWS_AS(isomorphic(s, bare, g1, IsoOrder::first), std::invalid_argument);
}

TEST_CASE("second-order isomorphism is translation invariant") {
    SpaceSpec s;
    for (int i = 1; i <= 4; ++i) s.vertex_space.push_back({std::to_string(i), std::nullopt, std::nullopt});
    s.edge_values = {0, 1};
    s.zero = 0;
    s.attr_kind = AttrKind::real_vector;
    s.attr_dim = 2;
    s.attr_distance = "euclidean";
    s.finalize();

    auto loc = [](int x, int y) { return json::array({x, y}); };
    Graph g1 = make_graph(s, {0, 1, 2}, {loc(0, 0), loc(1, 0), loc(0, 3)},
                          {{{0, 1}, 1}, {{1, 2}, 1}});
    // translated by (+1,+1)
    Graph g2 = make_graph(s, {0, 1, 2}, {loc(1, 1), loc(2, 1), loc(1, 4)},
                          {{{0, 1}, 1}, {{1, 2}, 1}});
    // distorted
    Graph g3 = make_graph(s, {0, 1, 2}, {loc(0, 0), loc(2, 0), loc(0, 3)},
                          {{{0, 1}, 1}, {{1, 2}, 1}});
    CHECK(isomorphic(s, g1, g2, IsoOrder::second, "euclidean"));
    CHECK_FALSE(isomorphic(s, g1, g3, IsoOrder::second, "euclidean"));
    CHECK_THROWS_AS(isomorphic(s, g1, g2, IsoOrder::second), std::invalid_argument);
    // first-order would compare raw locations and fail on translation
    CHECK_FALSE(isomorphic(s, g1, g2, IsoOrder::first));
}

TEST_CASE("isomorphism is an equivalence relation") {
    SpaceSpec s = binary_space(5);
    Rng rng(99);
    std::vector<Graph> gs;
    for (int i = 0; i < 12; ++i) gs.push_back(random_graph(s, rng, 5));
    for (const auto& a : gs) CHECK(isomorphic(s, a, a, IsoOrder::plain));
    for (const auto& a : gs)
        for (const auto& b : gs) {
            bool ab = isomorphic(s, a, b, IsoOrder::plain);
            CHECK(ab == isomorphic(s, b, a, IsoOrder::plain));
            if (!ab) continue;
            for (const auto& c : gs)
                if (isomorphic(s, b, c, IsoOrder::plain)) CHECK(isomorphic(s, a, c, IsoOrder::plain));
        }
}

TEST_CASE("compatibility") {
    SpaceSpec s = binary_space(3);
    Template edge{graph_of(s, {"1", "2"}, {{"1", "2"}}), IsoOrder::plain, "", false};
    CHECK(compatibility(s, edge.graph, edge));
    CHECK_FALSE(compatibility(s, graph_of(s, {"1"}), edge));  // order mismatch

    Template conn_edge = edge;
    conn_edge.connected_only = true;
    Graph two_isolated = graph_of(s, {"1", "2"});
    CHECK_FALSE(compatibility(s, two_isolated, conn_edge));
}

TEST_CASE("count_matches") {
    SpaceSpec s = binary_space(3);
    Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
    Template single{graph_of(s, {"1"}), IsoOrder::plain, "", false};
    Template edge{graph_of(s, {"1", "2"}, {{"1", "2"}}), IsoOrder::plain, "", false};

    auto u = count_matches(s, tri, {single, edge});
    CHECK(u[0] == 3);
    CHECK(u[1] == 3);

    SUBCASE("17-vertex order-2 counts sum to 136") {
        SpaceSpec s17 = binary_space(17);
        Rng rng(3);
        std::vector<int> all;
        for (int i = 0; i < 17; ++i) all.push_back(i);
        std::vector<std::pair<std::pair<int, int>, int>> edges;
        for (int i = 0; i < 17; ++i)
            for (int j = i + 1; j < 17; ++j)
                if (rng.next_unit() < 0.2) edges.push_back({{i, j}, 1});
        Graph g = make_graph(s17, all, {}, edges);
        Template e2{graph_of(s17, {"1", "2"}, {{"1", "2"}}), IsoOrder::plain, "", false};
        Template ne2{graph_of(s17, {"1", "2"}), IsoOrder::plain, "", false};
        auto u2 = count_matches(s17, g, {e2, ne2});
        CHECK(u2[0] + u2[1] == 136);
    }
}

TEST_CASE("connected-only counting equals brute force") {
    SpaceSpec s = binary_space(8);
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(s, rng, 8);
        for (int k = 1; k <= 4; ++k) {
            // connected template of order k: a path
            std::vector<std::string> ids;
            std::vector<std::pair<std::string, std::string>> path_edges;
            for (int i = 1; i <= k; ++i) ids.push_back(std::to_string(i));
            for (int i = 1; i < k; ++i)
                path_edges.push_back({std::to_string(i), std::to_string(i + 1)});
            Template path{graph_of(s, ids, path_edges), IsoOrder::plain, "", true};
            Template path_free = path;
            path_free.connected_only = false;

            // brute force never uses the neighborhood expansion
            auto fast = count_matches(s, g, {path});
            long long brute = 0;
            for (const Graph& sg : subgraphs(g, k))
                if (compatibility(s, sg, path)) ++brute;
            CHECK(fast[0] == brute);
            // for a connected pattern the unrestricted count agrees
            auto free_count = count_matches(s, g, {path_free});
            CHECK(free_count[0] == brute);
        }
    }
}

TEST_CASE("U is isomorphism invariant") {
    SpaceSpec s = binary_space(6);
    Rng rng(31);
    Template edge{graph_of(s, {"1", "2"}, {{"1", "2"}}), IsoOrder::plain, "", false};
    Template vee{graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}}), IsoOrder::plain, "", true};
    for (int trial = 0; trial < 20; ++trial) {
        Graph g = random_graph(s, rng, 4);
        // relabel by shifting every vertex up by 2 (within the 6-vertex space)
        std::vector<int> verts2;
        for (int v : g.verts) verts2.push_back(v + 2);
        std::vector<std::pair<std::pair<int, int>, int>> edges2;
        for (const auto& [pr, val] : g.edges) edges2.push_back({{pr.first + 2, pr.second + 2}, val});
        Graph h = make_graph(s, verts2, {}, edges2);
        REQUIRE(isomorphic(s, g, h, IsoOrder::plain));
        CHECK(count_matches(s, g, {edge, vee}) == count_matches(s, h, {edge, vee}));
    }
}

TEST_CASE("attribute_by_degree") {
    SpaceSpec s = binary_space(6);
    SUBCASE("edgeless graphs take the lowest bucket") {
        Graph g = graph_of(s, {"1", "2", "3"});
        Graph a = attribute_by_degree(g, {1, 4}, {"c1", "c2", "c3"});
        for (const auto& attr : a.attrs) CHECK(attr == json("c1"));
    }
    SUBCASE("star center of degree 5") {
        Graph star = graph_of(s, {"1", "2", "3", "4", "5", "6"},
                              {{"1", "2"}, {"1", "3"}, {"1", "4"}, {"1", "5"}, {"1", "6"}});
        Graph a = attribute_by_degree(star, {1, 4}, {"c1", "c2", "c3"});
        CHECK(a.attrs[0] == json("c3"));   // degree 5
        CHECK(a.attrs[1] == json("c1"));   // leaves have degree 1
    }
    SUBCASE("triangle lands in the middle bucket") {
        Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
        Graph a = attribute_by_degree(tri, {1, 4}, {"c1", "c2", "c3"});
        for (const auto& attr : a.attrs) CHECK(attr == json("c2"));
    }
    SUBCASE("errors") {
        Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
        CHECK_THROWS_AS(attribute_by_degree(tri, {4, 1}, {"a", "b", "c"}), std::invalid_argument);
        CHECK_THROWS_AS(attribute_by_degree(tri, {1}, {"a"}), std::invalid_argument);
        Graph attributed = attribute_by_degree(tri, {1}, {"a", "b"});
        CHECK_THROWS_AS(attribute_by_degree(attributed, {1}, {"a", "b"}), std::invalid_argument);
        CHECK_NOTHROW(attribute_by_degree(attributed, {1}, {"a", "b"}, true));
    }
}

TEST_CASE("contract_parts") {
    SpaceSpec s = binary_space(6);
    Template tri{graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}}),
                 IsoOrder::plain, "", true};

    SUBCASE("two disjoint triangles") {
        Graph g = graph_of(s, {"1", "2", "3", "4", "5", "6"},
                           {{"1", "2"}, {"1", "3"}, {"2", "3"}, {"4", "5"}, {"4", "6"}, {"5", "6"}});
        ContractResult r = contract_parts(s, g, {tri});
        CHECK(r.occurrences.size() == 2);
        CHECK(r.graph.order() == 2);
        CHECK(r.graph.edges.empty());
        CHECK(r.uncovered.empty());
    }
    SUBCASE("two triangles sharing a vertex") {
        Graph g = graph_of(s, {"1", "2", "3", "4", "5"},
                           {{"1", "2"}, {"1", "3"}, {"2", "3"}, {"3", "4"}, {"3", "5"}, {"4", "5"}});
        ContractResult r = contract_parts(s, g, {tri});
        CHECK(r.occurrences.size() == 2);
        REQUIRE(r.graph.edges.size() == 1);
        CHECK(r.space.edge_values[r.graph.edges[0].second] == json(1));
    }
    SUBCASE("no occurrences yields the empty graph") {
        Graph g = graph_of(s, {"1", "2"}, {{"1", "2"}});
        ContractResult r = contract_parts(s, g, {tri});
        CHECK(r.graph.empty());
        CHECK(r.uncovered.size() == 2);
    }
    SUBCASE("occurrence cap") {
        Graph g = graph_of(s, {"1", "2", "3", "4"},
                           {{"1", "2"}, {"1", "3"}, {"1", "4"}, {"2", "3"}, {"2", "4"}, {"3", "4"}});
        CHECK_THROWS_AS(contract_parts(s, g, {tri}, 2), resource_error);
    }
}
