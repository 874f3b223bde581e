#pragma once

// Branching tree spaces with path-label vertices: tree and shifted-tree
// projections, rooted isomorphism, Galton-Watson and PCFG laws with exact
// normalization over depth-capped spaces, and merging-model validation.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gmrg/rng.hpp"
#include "json.hpp"

namespace gmrg {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Vertices are branch-index strings over {0,1}; "" is the root. A tree is
// an ancestor-closed vertex set; depth(v) = v.size().
struct BranchTree {
    std::vector<std::string> verts;       // sorted by (length, lex)
    std::map<std::string, json> attrs;    // total when present

    bool empty() const { return verts.empty(); }
    bool contains(const std::string& v) const;
    int depth() const;  // max |v|; -1 for the empty tree
    std::vector<std::string> children(const std::string& v) const;
    std::vector<std::string> leaves() const;

    bool operator==(const BranchTree& o) const { return verts == o.verts && attrs == o.attrs; }
    bool operator<(const BranchTree& o) const;
};

// Validating constructor: branch characters, ancestor closure, optional
// depth cap, attribute totality.
BranchTree make_tree(std::vector<std::string> verts, std::map<std::string, json> attrs = {},
                     int max_depth = -1);

// pi_V(T) = T intersect V; V itself must be a tree.
BranchTree tree_project(const BranchTree& t, const BranchTree& v);

// A tree re-rooted at v0: the descendant set with paths relative to v0.
struct ShiftedTree {
    std::string root;
    BranchTree sub;  // relative paths; empty when v0 was not in the tree
};

ShiftedTree shifted_project(const BranchTree& t, const std::string& v0);

// The maximal path-trees (root-to-leaf paths); their union is T.
std::vector<BranchTree> path_tree_decomposition(const BranchTree& t);

// Rooted isomorphism by canonical codes; attributed when both carry
// attributes (mixing is an error).
bool rooted_isomorphic(const BranchTree& a, const BranchTree& b);
bool rooted_isomorphic(const ShiftedTree& a, const ShiftedTree& b);

// All trees of depth <= n (including the empty tree), canonical order.
std::vector<BranchTree> enumerate_trees(int max_depth);
// All attributed trees over the token set.
std::vector<BranchTree> enumerate_attr_trees(int max_depth, const std::vector<json>& tokens);
// Streaming variant for spaces too large to materialize (the full
// attributed space at depth 3 runs to about a million trees).
void for_each_attr_tree(int max_depth, const std::vector<json>& tokens,
                        const std::function<void(const BranchTree&)>& fn);

// Offspring models. The Galton-Watson law draws the number of children;
// the two one-child branch placements split that mass evenly (isomorphic
// shifted trees are equally likely). Vertices at the depth cap are leaves
// with probability one and contribute no factor.
struct GWModel {
    double root_prob = 1.0;
    std::array<double, 3> mu{};  // over {0,1,2} children
    int max_depth = 2;

    void validate() const;
};

struct PcfgRule {
    std::vector<std::pair<int, json>> children;  // (branch, attribute), branch-sorted
    double prob = 0.0;
};

struct PcfgModel {
    double root_prob = 1.0;
    std::vector<std::pair<json, double>> root_attr;          // law of the root attribute
    std::map<std::string, std::vector<PcfgRule>> rules;      // keyed by attr dump, non-leaf only
    std::vector<json> leaf_attrs, nonleaf_attrs;              // disjoint
    int max_depth = 2;

    void validate() const;
    bool is_leaf_attr(const json& a) const;
    std::vector<json> all_attrs() const;
};

double gw_log_prob(const GWModel& m, const BranchTree& t);
double pcfg_log_prob(const PcfgModel& m, const BranchTree& t);

BranchTree gw_sample(const GWModel& m, Rng& rng);
BranchTree pcfg_sample(const PcfgModel& m, Rng& rng);

// Merging-model trees: vertices are subsets of {1..N} leaves.
struct MergeTree {
    std::vector<std::vector<int>> verts;
};

struct MergeCheck {
    bool ok = true;
    std::string witness;  // first violated condition, when not ok
};

MergeCheck validate_merge_tree(const MergeTree& t);

ordered_json tree_to_json(const BranchTree& t);
BranchTree tree_from_json(const json& j, int max_depth = -1);
ordered_json merge_tree_to_json(const MergeTree& t);
MergeTree merge_tree_from_json(const json& j);

}  // namespace gmrg
