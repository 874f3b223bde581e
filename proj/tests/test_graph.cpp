#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "gmrg/dist.hpp"
#include "gmrg/enumerate.hpp"
#include "gmrg/errors.hpp"
#include "helpers.hpp"

using namespace gmrg;
using namespace gmrg::testing;

TEST_CASE("graph construction invariants") {
    SpaceSpec s = binary_space(3);
    CHECK_THROWS_AS(make_graph(s, {0, 0}, {}, {}), std::invalid_argument);  // duplicate vertex
    CHECK_THROWS_AS(make_graph(s, {0, 5}, {}, {}), std::invalid_argument);  // out of range
    CHECK_THROWS_AS(make_graph(s, {0, 1}, {}, {{{0, 0}, 1}}), std::invalid_argument);  // self loop
    CHECK_THROWS_AS(make_graph(s, {0, 1}, {}, {{{0, 2}, 1}}), std::invalid_argument);  // endpoint outside
    // zero edges are dropped; symmetric storage on unordered pairs
    Graph g = make_graph(s, {2, 0, 1}, {}, {{{1, 0}, 1}, {{1, 2}, 0}});
    CHECK(g.verts == std::vector<int>{0, 1, 2});
    CHECK(g.edges.size() == 1);
    CHECK(g.edge_value(0, 1, s.zero) == 1);
    CHECK(g.edge_value(1, 0, s.zero) == 1);
    CHECK(g.edge_value(1, 2, s.zero) == 0);
}

TEST_CASE("induced subgraph and projection") {
    SpaceSpec s = binary_space(3);
    Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});

    SUBCASE("identity and empty") {
        CHECK(induced_subgraph(tri, tri.verts) == tri);
        CHECK(induced_subgraph(tri, {}).empty());
    }
    SUBCASE("restriction keeps inner edges") {
        Graph e12 = induced_subgraph(tri, {0, 1});
        CHECK(e12.verts == std::vector<int>{0, 1});
        CHECK(e12.edges.size() == 1);
    }
    SUBCASE("precondition") {
        Graph just1 = graph_of(s, {"1"});
        CHECK_THROWS_AS(induced_subgraph(just1, {1}), std::invalid_argument);
    }
    SUBCASE("projection intersects first") {
        Graph g1 = graph_of(s, {"1"});
        CHECK(project(s, g1, {1}).empty());                                   // disjoint
        Graph e = graph_of(s, {"1", "2"}, {{"1", "2"}});
        CHECK(project(s, e, {0, 1, 2}) == e);                                 // superset
        Graph p = project(s, e, {0});
        CHECK(p.verts == std::vector<int>{0});
        CHECK(p.edges.empty());
        CHECK_THROWS_AS(project(s, e, {9}), std::invalid_argument);
        // idempotence
        CHECK(project(s, project(s, e, {0}), {0}) == project(s, e, {0}));
    }
}

TEST_CASE("subgraph enumeration counts") {
    SpaceSpec s = binary_space(3);
    Graph tri = graph_of(s, {"1", "2", "3"}, {{"1", "2"}, {"1", "3"}, {"2", "3"}});
    CHECK(subgraphs(tri).size() == 8);
    CHECK(subgraphs(tri, 1).size() == 3);
    CHECK(subgraphs(tri, 2).size() == 3);
    CHECK(subgraphs(Graph{}).size() == 1);  // just the empty graph
    CHECK(subgraphs(tri, 5).empty());

    // binomial cardinality on a larger vertex set
    SpaceSpec s17 = binary_space(17);
    std::vector<int> all;
    for (int i = 0; i < 17; ++i) all.push_back(i);
    Graph g17 = make_graph(s17, all, {}, {});
    CHECK(subgraphs(g17, 2).size() == 136);
}

TEST_CASE("enumerate_space") {
    SUBCASE("two vertices, binary edges: 5 graphs") {
        SpaceSpec s = binary_space(2);
        auto space = enumerate_space(s);
        CHECK(space.size() == 5);
        // canonical order: empty, {1}, {2}, {1,2} no edge, {1,2} edge
        CHECK(space[0].empty());
        CHECK(space[1].verts == std::vector<int>{0});
        CHECK(space[2].verts == std::vector<int>{1});
        CHECK(space[3].verts == std::vector<int>{0, 1});
        CHECK(space[3].edges.empty());
        CHECK(space[4].edges.size() == 1);
    }
    SUBCASE("single vertex: 2 graphs") {
        CHECK(enumerate_space(binary_space(1)).size() == 2);
    }
    SUBCASE("master map kills the edge") {
        SpaceSpec s = binary_space(2);
        s.master_vertex.kind = MasterKind::table;
        s.master_vertex.table_default = 0;  // F_V identically zero
        s.finalize();
        CHECK(enumerate_space(s).size() == 4);
    }
    SUBCASE("cap exceeded") {
        SpaceSpec s = binary_space(8);
        CHECK_THROWS_AS(enumerate_space(s, 100), resource_error);
    }
    SUBCASE("projectability closure") {
        SpaceSpec s = binary_space(3);
        auto space = enumerate_space(s);
        CHECK(space.size() == 18);
        std::set<std::string> keys;
        for (const auto& g : space) keys.insert(canon_key(g));
        for (const auto& g : space)
            for (const auto& sub : subgraphs(g)) CHECK(keys.count(canon_key(sub)) == 1);
    }
}

TEST_CASE("respects_master") {
    SUBCASE("grid threshold") {
        SpaceSpec s;
        for (int x = 0; x < 3; ++x)
            for (int y = 0; y < 1; ++y)
                s.vertex_space.push_back({std::to_string(x) + "_" + std::to_string(y),
                                          std::array<int, 2>{x, y}, std::nullopt});
        s.edge_values = {0, 1};
        s.zero = 0;
        s.order_covers = {{0, 1}};
        s.master_vertex.kind = MasterKind::grid_threshold;
        s.master_vertex.threshold = 1;
        s.finalize();
        // adjacent pair fine, distance-2 pair rejected at construction
        CHECK_NOTHROW(make_graph(s, {0, 1}, {}, {{{0, 1}, 1}}));
        CHECK_THROWS_AS(make_graph(s, {0, 2}, {}, {{{0, 2}, 1}}), std::invalid_argument);
        Graph g;
        g.verts = {0, 2};
        g.edges = {{{0, 2}, 1}};
        CHECK_FALSE(respects_master(s, g));
        Graph edgeless = make_graph(s, {0, 2}, {}, {});
        CHECK(respects_master(s, edgeless));
    }
    SUBCASE("same-color exclusion") {
        SpaceSpec s = binary_space(2);
        s.attr_kind = AttrKind::finite;
        s.attr_tokens = {"red", "blue"};
        s.master_attr.kind = MasterKind::table;
        s.master_attr.table = {{{"red", "red"}, 0}, {{"blue", "blue"}, 0}};
        s.master_attr.table_default = -1;
        s.finalize();
        CHECK_THROWS_AS(make_graph(s, {0, 1}, {"red", "red"}, {{{0, 1}, 1}}), std::invalid_argument);
        CHECK_NOTHROW(make_graph(s, {0, 1}, {"red", "blue"}, {{{0, 1}, 1}}));
    }
}

TEST_CASE("graph json round trip is canonical") {
    SpaceSpec s = binary_space(3);
    Graph g = graph_of(s, {"2", "1"}, {{"2", "1"}});
    ordered_json j = graph_to_json(s, g);
    CHECK(j["edges"][0]["u"] == "1");
    CHECK(j["edges"][0]["v"] == "2");
    Graph back = graph_from_json(s, j);
    CHECK(back == g);
    CHECK(graph_to_json(s, back).dump() == j.dump());
    // empty graph serializes with an empty vertex list
    CHECK(graph_to_json(s, Graph{})["vertices"].empty());
}

TEST_CASE("marginal") {
    SpaceSpec s = binary_space(2);
    auto space = enumerate_space(s);
    std::vector<double> uniform(space.size(), 1.0 / space.size());
    DistributionTable d = make_dist(space, uniform);

    SUBCASE("uniform over the 5-graph space onto {1}") {
        DistributionTable m = marginal(s, d, {0});
        REQUIRE(m.size() == 2);
        CHECK(m.support[0].empty());
        CHECK(m.probs[0] == doctest::Approx(2.0 / 5.0).epsilon(1e-14));
        CHECK(m.probs[1] == doctest::Approx(3.0 / 5.0).epsilon(1e-14));
    }
    SUBCASE("marginal onto the full space is the identity") {
        DistributionTable m = marginal(s, d, {0, 1});
        REQUIRE(m.size() == d.size());
        for (size_t i = 0; i < m.size(); ++i) CHECK(m.probs[i] == doctest::Approx(d.probs[i]));
    }
    SUBCASE("point mass on the empty graph") {
        std::vector<double> pm(space.size(), 0.0);
        pm[0] = 1.0;
        DistributionTable p = make_dist(space, pm);
        DistributionTable m = marginal(s, p, {0});
        CHECK(m.probs[0] == doctest::Approx(1.0));
    }
    SUBCASE("marginal tower") {
        SpaceSpec s3 = binary_space(3);
        auto sp3 = enumerate_space(s3);
        Rng rng(5);
        std::vector<double> w(sp3.size());
        double tot = 0;
        for (auto& x : w) {
            x = rng.next_range(0.01, 1.0);
            tot += x;
        }
        for (auto& x : w) x /= tot;
        DistributionTable d3 = make_dist(sp3, w);
        for (int v1_mask = 0; v1_mask < 8; ++v1_mask)
            for (int v0_mask = v1_mask;; v0_mask = (v0_mask - 1) & v1_mask) {
                std::vector<int> v0, v1;
                for (int i = 0; i < 3; ++i) {
                    if (v0_mask & (1 << i)) v0.push_back(i);
                    if (v1_mask & (1 << i)) v1.push_back(i);
                }
                DistributionTable direct = marginal(s3, d3, v0);
                DistributionTable nested = marginal(s3, marginal(s3, d3, v1), v0);
                REQUIRE(direct.size() == nested.size());
                double sum = 0.0;
                for (size_t i = 0; i < direct.size(); ++i) {
                    CHECK(std::fabs(direct.probs[i] - nested.probs[i]) < 1e-12);
                    sum += direct.probs[i];
                }
                CHECK(std::fabs(sum - 1.0) < 1e-12);
                if (v0_mask == 0) break;
            }
    }
}

TEST_CASE("independence check") {
    SpaceSpec s = binary_space(3);
    auto space = enumerate_space(s);

    SUBCASE("point mass is independent") {
        std::vector<double> pm(space.size(), 0.0);
        pm[3] = 1.0;
        DistributionTable d = make_dist(space, pm);
        CHECK(check_independence(s, d, {0}, {1}));
    }
    SUBCASE("edge-vertex coupling is dependent") {
        // edge {1,2} present iff vertex 3 present, uniform otherwise
        std::vector<double> w(space.size(), 0.0);
        int hits = 0;
        for (size_t i = 0; i < space.size(); ++i) {
            const Graph& g = space[i];
            bool has12 = g.has_vertex(0) && g.has_vertex(1);
            if (!has12) continue;
            bool edge = g.edge_value(0, 1, s.zero) == 1;
            if (edge == g.has_vertex(2)) {
                w[i] = 1.0;
                ++hits;
            }
        }
        for (auto& x : w) x /= hits;
        DistributionTable d = make_dist(space, w);
        CHECK_FALSE(check_independence(s, d, {0, 1}, {2}));
    }
}

TEST_CASE("mode mass") {
    SpaceSpec s = binary_space(2);
    auto space = enumerate_space(s);
    SUBCASE("uniform: every point is a mode") {
        DistributionTable d = make_dist(space, std::vector<double>(space.size(), 0.2));
        CHECK(mode_mass(d, 0.5) == doctest::Approx(1.0));
    }
    SUBCASE("threshold admits only the mode") {
        DistributionTable d = make_dist(space, {0.9, 0.05, 0.05, 0.0, 0.0});
        CHECK(mode_mass(d, 0.5) == doctest::Approx(0.9));
        CHECK_THROWS_AS(mode_mass(d, 1.5), std::invalid_argument);
        CHECK_THROWS_AS(mode_mass(d, 0.0), std::invalid_argument);
    }
    SUBCASE("point mass") {
        std::vector<double> pm(space.size(), 0.0);
        pm[0] = 1.0;
        DistributionTable d = make_dist(space, pm);
        CHECK(mode_mass(d, 0.3) == doctest::Approx(1.0));
    }
}

TEST_CASE("tv distance") {
    SpaceSpec s = binary_space(2);
    auto space = enumerate_space(s);
    DistributionTable d = make_dist(space, std::vector<double>(space.size(), 0.2));
    CHECK(tv_distance(d, d) == doctest::Approx(0.0));

    std::vector<double> a(space.size(), 0.0), b(space.size(), 0.0);
    a[0] = 1.0;
    b[1] = 1.0;
    CHECK(tv_distance(make_dist(space, a), make_dist(space, b)) == doctest::Approx(1.0));

    std::vector<Graph> two{space[0], space[1]};
    CHECK(tv_distance(make_dist(two, {0.5, 0.5}), make_dist(two, {0.75, 0.25})) ==
          doctest::Approx(0.25));
}

TEST_CASE("dist table validation") {
    SpaceSpec s = binary_space(2);
    auto space = enumerate_space(s);
    CHECK_THROWS_AS(make_dist({space[0], space[0]}, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_dist({space[0]}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(make_dist({space[0], space[1]}, {1.5, -0.5}), std::invalid_argument);
}
