#pragma once

// Variable-order attributed graphs over a SpaceSpec, the canonical
// projections, and induced-subgraph enumeration.

#include <optional>
#include <string>
#include <vector>

#include "gmrg/space.hpp"

namespace gmrg {

// Immutable after construction. Vertices are sorted indices into the
// owning space's vertex list; edges are stored on unordered pairs (u < v)
// with the zero value omitted, so symmetry and the no-self-loop rule hold
// by construction.
struct Graph {
    std::vector<int> verts;
    std::vector<json> attrs;  // aligned with verts; empty when unattributed
    std::vector<std::pair<std::pair<int, int>, int>> edges;  // ((u,v), value index)

    int order() const { return static_cast<int>(verts.size()); }
    bool empty() const { return verts.empty(); }
    bool attributed() const { return !attrs.empty() || verts.empty(); }

    bool has_vertex(int v) const;
    int vertex_pos(int v) const;  // -1 when absent
    const json& attr_of(int v) const;
    // Edge value index, or the given zero when the pair is absent.
    int edge_value(int u, int v, int zero) const;
    int degree(int v, int /*zero*/) const;

    bool operator==(const Graph& o) const { return verts == o.verts && edges == o.edges && attrs == o.attrs; }
};

// Strict weak order on canonical encodings (order, vertex list, edges,
// attributes); used for support deduplication and deterministic output.
bool graph_less(const Graph& a, const Graph& b);

// Deterministic space-independent key, usable as a map key.
std::string canon_key(const Graph& g);

// Validating constructor. Edges may be given in any order with zero values
// included; they are normalized. Throws std::invalid_argument on any
// violated invariant (range, duplicates, attribute discipline, master
// maps, max order).
Graph make_graph(const SpaceSpec& s, std::vector<int> verts, std::vector<json> attrs,
                 std::vector<std::pair<std::pair<int, int>, int>> edges);

bool respects_master(const SpaceSpec& s, const Graph& g);

// G(V') for V' a subset of V(G).
Graph induced_subgraph(const Graph& g, const std::vector<int>& vsub);

// Canonical projection pi_V(G) = G(V intersect V(G)); V must be a subset
// of the vertex space.
Graph project(const SpaceSpec& s, const Graph& g, const std::vector<int>& V);

// All induced subgraphs, each vertex subset exactly once, in (order,
// lexicographic) canonical order; restricted to order k when k is given.
std::vector<Graph> subgraphs(const Graph& g, std::optional<int> k = std::nullopt);

// Connectivity with respect to nonzero edges.
bool is_connected(const Graph& g);

ordered_json graph_to_json(const SpaceSpec& s, const Graph& g);
Graph graph_from_json(const SpaceSpec& s, const json& j);

}  // namespace gmrg
