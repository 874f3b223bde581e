#pragma once

// Explicitly enumerated distributions over small graph spaces: the
// exactness oracle. Marginalization, independence checking, the mode-mass
// degeneracy diagnostic and total-variation distance.

#include <vector>

#include "gmrg/graph.hpp"

namespace gmrg {

struct DistributionTable {
    std::vector<Graph> support;  // canonical order, pairwise distinct
    std::vector<double> probs;   // nonnegative, sums to 1 within 1e-12

    size_t size() const { return support.size(); }
};

// Validating constructor; sorts into canonical order.
DistributionTable make_dist(std::vector<Graph> support, std::vector<double> probs);

// P_V^marg: support becomes {G in the input support : V(G) subseteq V}.
// The input support must be a full projectable enumeration.
DistributionTable marginal(const SpaceSpec& s, const DistributionTable& d, const std::vector<int>& V);

// Whether the marginal variables on V1 and V2 are independent: the joint
// law of the pair of projections factorizes within tol at every point.
bool check_independence(const SpaceSpec& s, const DistributionTable& d, const std::vector<int>& V1,
                        const std::vector<int>& V2, double tol = 1e-10);

// Total probability of {G : P(G) > (1-eps) * max P}.
double mode_mass(const DistributionTable& d, double eps);

// (1/2) sum |p - q| over the union of the supports.
double tv_distance(const DistributionTable& a, const DistributionTable& b);

}  // namespace gmrg
