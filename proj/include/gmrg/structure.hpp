#pragma once

// Dependency structure over the atomic variables (vertex and pair
// projections): neighborhood functions and their cliques, seeded Gibbs
// distributions, the Markov property check, the naive product model, and
// chain-graph analysis/evaluation.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmrg/dist.hpp"

namespace gmrg {

// The index set of atomic variables: all singletons and pairs over the
// vertex space, canonically ordered.
struct AtomicIndex {
    std::vector<std::vector<int>> members;

    static AtomicIndex over(int n_vertices);
    int find(const std::vector<int>& v) const;  // -1 when absent
    size_t size() const { return members.size(); }
};

struct NeighborhoodFunction {
    AtomicIndex idx;
    std::vector<std::vector<bool>> table;  // symmetric over idx positions

    static NeighborhoodFunction complete(int n_vertices);
    static NeighborhoodFunction minimal(int n_vertices);  // subset edges only
};

// Symmetry plus the subset requirement (a direct dependency whenever one
// index contains the other).
bool validate_neighborhood(const NeighborhoodFunction& n);

// The union sets of all cliques: every singleton and pair, plus unions of
// larger cliques. Sorted, deduplicated.
std::vector<std::vector<int>> clique_union_sets(const NeighborhoodFunction& n);

// A random Gibbs distribution with respect to the neighborhood function:
// factors drawn uniformly in [0.1, 1] per (clique set, projected value),
// normalized exactly. constant_mode forces all factors to 1.
DistributionTable random_gibbs_wrt(const NeighborhoodFunction& n, const SpaceSpec& s,
                                   std::uint64_t seed, bool constant_mode = false,
                                   std::uint64_t cap = 1000000);

// Whether the conditional law of each atomic variable given all others
// outside u(V) equals the conditional given the neighbors alone, at every
// positive-probability conditioning event. Zero-probability events are
// skipped and counted.
bool is_markov(const SpaceSpec& s, const DistributionTable& d, const NeighborhoodFunction& n,
               double tol = 1e-10, long long* skipped = nullptr);

// The naive product model: vertex presences independent, edge values
// conditionally independent given the endpoint presences. Conditional
// tables are per pair over edge-value indices (both endpoints present).
double naive_model_eval(const SpaceSpec& s, const std::vector<double>& vertex_probs,
                        const std::map<std::pair<int, int>, std::vector<double>>& edge_conditionals,
                        const Graph& g);

// Partially directed structure graphs over arbitrary index tokens.
struct StructureGraph {
    enum class Mark { directed, undirected };
    std::vector<std::string> verts;
    // directed: (from, to); undirected: stored with from < to.
    std::map<std::pair<int, int>, Mark> edges;

    int find(const std::string& token) const;
    void add_directed(const std::string& from, const std::string& to);
    void add_undirected(const std::string& a, const std::string& b);
};

struct ChainReport {
    bool is_chain_graph = true;
    std::vector<std::string> cycle_witness;        // a partially directed cycle
    std::vector<std::vector<int>> components;      // partition of vertex positions
};

ChainReport chain_analyze(const StructureGraph& h);

// A factor over a set of structure-graph vertices; the table is keyed by
// the concatenated canonical keys of the member projections.
struct CliqueFactor {
    std::vector<std::string> over;  // structure vertex tokens
    std::map<std::string, double> table;
    double fallback = 1.0;  // value for keys not in the table
};

// Signature key of a graph under a set of atomic-variable tokens
// (comma-joined sorted vertex ids per token).
std::string atomic_signature(const SpaceSpec& s, const Graph& g, const std::vector<std::string>& tokens);

// Builds the fully normalized joint from per-component conditional
// normalization over the enumerated space. Factors must sit inside a
// moral clique of their component. Throws degenerate_error naming the
// parent context when a reachable normalizer is zero.
DistributionTable chain_eval(const SpaceSpec& s, const StructureGraph& h,
                             const std::vector<CliqueFactor>& factors,
                             std::uint64_t cap = 1000000);

StructureGraph structure_from_json(const json& j);
ordered_json structure_to_json(const StructureGraph& h);

}  // namespace gmrg
