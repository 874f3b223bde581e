#pragma once

// Isomorphism tests at the three orders, template compatibility maps, the
// subgraph match counts U_k, degree-based attribution and part
// contraction.

#include <optional>
#include <string>
#include <vector>

#include "gmrg/graph.hpp"

namespace gmrg {

enum class IsoOrder { plain, first, second };

struct Template {
    Graph graph;
    IsoOrder iso_order = IsoOrder::plain;
    std::string distance_id;  // required iff iso_order == second
    bool connected_only = false;
};

// Named distance over attribute values: "discrete", "euclidean", "l1".
double attr_distance(const std::string& id, const json& a, const json& b);

// Whether a bijection exists satisfying the order's conditions. Exact;
// search is pruned by vertex signatures with exhaustive fallback. Plain
// order ignores attributes on attributed graphs.
bool isomorphic(const SpaceSpec& s, const Graph& a, const Graph& b, IsoOrder order,
                const std::string& distance_id = "");

// R_k(G): isomorphic to the template, with the connectivity filter.
bool compatibility(const SpaceSpec& s, const Graph& g, const Template& t);

// U(G): per-template count of induced subgraphs compatible with it, each
// vertex subset counted once. Orders at which every template is
// connected-only are enumerated by neighborhood expansion.
std::vector<long long> count_matches(const SpaceSpec& s, const Graph& g,
                                     const std::vector<Template>& templates);

// Same counts, restricted to subgraphs whose vertex set contains
// `required` (the J_0/J_1 enumerations behind incremental score deltas).
std::vector<long long> count_matches_containing(const SpaceSpec& s, const Graph& g,
                                                const std::vector<Template>& templates,
                                                const std::vector<int>& required);

// Assigns each vertex a color by the bucket of its edge count. Thresholds
// are upper-inclusive breakpoints: d <= t1 -> colors[0], t1 < d <= t2 ->
// colors[1], ..., d > tm -> colors[m].
Graph attribute_by_degree(const Graph& g, const std::vector<int>& thresholds,
                          const std::vector<json>& colors, bool overwrite = false);

struct ContractResult {
    SpaceSpec space;   // synthesized second-level space
    Graph graph;       // one super-vertex per occurrence; edge value = overlap
    std::vector<std::pair<std::vector<int>, int>> occurrences;  // (vertex subset, part index)
    std::vector<int> uncovered;  // original vertices in no occurrence
};

// Second-level contraction: locate part occurrences, connect overlapping
// occurrences with the shared-vertex count as edge value.
ContractResult contract_parts(const SpaceSpec& s, const Graph& g, const std::vector<Template>& parts,
                              std::size_t occurrence_cap = 4096);

IsoOrder iso_order_from_string(const std::string& s);
std::string iso_order_to_string(IsoOrder o);

}  // namespace gmrg
