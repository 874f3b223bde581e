#pragma once

#include <cstdint>
#include <vector>

#include "gmrg/graph.hpp"

namespace gmrg {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Analytic upper bound on the number of graphs over the space (attribute
// assignments times per-pair admissible edge values, summed over vertex
// subsets up to the max order). Returns +inf when it overflows.
double space_size_bound(const SpaceSpec& s);

// Every graph over the space in canonical order: subsets by (size, lex),
// then attribute assignments, then edge assignments. Master maps and the
// max order are respected, so the result is projectable by construction.
// Throws resource_error when the size bound exceeds the cap.
std::vector<Graph> enumerate_space(const SpaceSpec& s, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace gmrg
