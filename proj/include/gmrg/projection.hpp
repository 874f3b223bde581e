#pragma once

// Brute-force verification of projection-family axioms on explicit finite
// spaces: projection-ness, consistency, strong consistency, completeness,
// atomic projections and the atomic representation. Families whose images
// live inside the space are checked in subset mode; others through the
// bridge identities between substructures.

#include <cstdint>
#include <string>
#include <vector>

#include "gmrg/graph.hpp"

namespace gmrg {

struct FiniteSpace {
    std::vector<std::string> elements;  // pairwise distinct encodings

    int find(const std::string& e) const;
    size_t size() const { return elements.size(); }
};

struct FamilyMember {
    std::string name;                 // display only
    std::vector<std::string> index;   // A, sorted tokens
    std::vector<std::string> image;   // Omega_A element list
    std::vector<int> table;           // omega position -> image position
};

struct ProjectionFamily {
    std::vector<std::string> base;    // B
    std::vector<FamilyMember> members;

    int find_index(const std::vector<std::string>& idx) const;  // -1 when absent
};

// f(f(w)) = f(w) for a total self-map given by omega positions (-1 marks a
// hole, which is a domain error).
bool is_projection(const std::vector<int>& table, const FiniteSpace& omega);

// Index validation: distinct indices, total tables, and the three
// indexing conditions (base image is the space; index inclusion matches
// image inclusion; index disjointness matches image disjointness, in
// subset mode). Each issue names the violated condition (0 = structural).
struct ValidationIssue {
    int condition;
    std::string detail;
};
std::vector<ValidationIssue> validate_family(const ProjectionFamily& fam, const FiniteSpace& omega);

struct Witness {
    std::string kind;  // "consistency", "strong-consistency", "completeness", ...
    std::string detail;
};

struct FamilyReport {
    bool consistent = true;
    bool strongly_consistent = true;
    bool complete = true;
    bool subset_mode = true;
    long long undetermined_bridge_points = 0;  // substructure mode only
    std::vector<Witness> witnesses;
};

FamilyReport family_report(const ProjectionFamily& fam, const FiniteSpace& omega,
                           std::uint64_t intersection_enumeration_cap = 1 << 20);

struct AtomicReport {
    std::vector<size_t> atomics;  // member positions
    bool has_representation = false;
    std::vector<size_t> representation;
};

// Atomics per the invertibility criterion: a member is atomic when the
// tuple of strictly-smaller-indexed projections fails to separate the
// points of its image (the empty tuple separates only singleton images).
// Requires a consistent, complete family containing the identity.
AtomicReport atomic_analysis(const ProjectionFamily& fam, const FiniteSpace& omega);

// Canonical families for the oracle suites.
// Graph family {pi_V : V subseteq Lambda_V}; indices carry a shared tag
// token so that disjoint vertex sets still intersect in the index (every
// image shares the empty graph).
ProjectionFamily canonical_graph_family(const SpaceSpec& s, const std::vector<Graph>& space,
                                        FiniteSpace* omega_out);
// Coordinate projections on {0,1}^n over the power-set index (substructure
// mode).
ProjectionFamily coordinate_family(int n, FiniteSpace* omega_out);

ProjectionFamily family_from_json(const json& j, FiniteSpace* omega_out);
ordered_json family_report_to_json(const FamilyReport& r);

}  // namespace gmrg
