#pragma once

// Gibbs scores from order-k potentials, the Mobius construction that
// recovers potentials from any positive distribution, the template
// exponential model with exact normalization and incremental score
// deltas, classic conditional models, and the mode-mass diagnostic.

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "gmrg/dist.hpp"
#include "gmrg/enumerate.hpp"
#include "gmrg/iso.hpp"
#include "gmrg/move.hpp"

namespace gmrg {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// lambda * count with the convention that a zero count contributes zero
// even for lambda = -inf (an absent template never excludes).
inline double weight_times_count(double lambda, long long count) {
    return count == 0 ? 0.0 : lambda * static_cast<double>(count);
}

// Order-k potentials keyed by canonical graph encoding; -inf is a hard
// exclusion.
struct PotentialSet {
    double psi0 = 0.0;
    std::map<int, std::map<std::string, double>> psi;  // order -> key -> value

    double lookup(int order, const std::string& key, long long* missing) const;
};

// psi0 + sum_k sum_{G' in S_k(G)} psi_k(G'). Undefined entries default to
// zero; when `missing` is non-null the number of such lookups is counted.
double gibbs_log_score(const PotentialSet& pot, const Graph& g, long long* missing = nullptr);

// Potentials reproducing log P exactly for every support graph of a
// strictly positive distribution over a full projectable enumeration (the
// Mobius inversion construction). Each per-graph potential is verified to
// depend only on the projected subgraph before tabulation.
PotentialSet mobius_potentials(const SpaceSpec& s, const DistributionTable& d);

struct TemplateModel {
    SpaceSpec spec;
    std::vector<Template> templates;
    std::vector<double> lambdas;  // aligned; -inf permitted
};

std::vector<long long> feature_counts(const TemplateModel& m, const Graph& g);
double template_log_score(const TemplateModel& m, const Graph& g);

struct NormalizeResult {
    double z;
    double log_z;
    DistributionTable dist;
};

// Exact normalization over the enumerated space. Throws degenerate_error
// when every score is -inf.
NormalizeResult normalize(const TemplateModel& m, std::uint64_t cap = kDefaultEnumerationCap);

// H(G_new) - H(G_old) via the gained/lost subgraph enumerations for the
// three move kinds (never via full recount).
double delta_H(const TemplateModel& m, const Graph& g_old, const Move& move);

// Independent-edge conditional laws over all edge functions on the fixed
// vertex set V, built through order-2 potentials.
DistributionTable classic_erdos_renyi(const SpaceSpec& s, const std::vector<int>& V, double p);
DistributionTable classic_blockmodel(const SpaceSpec& s, const std::vector<int>& V,
                                     const std::map<std::pair<std::string, std::string>, double>& p);

// Model JSON: {"spec": ..., "templates": [...]}.
TemplateModel model_from_json(const json& j);
ordered_json model_to_json(const TemplateModel& m);
Template template_from_json(const SpaceSpec& s, const json& j, double* lambda_out = nullptr);
ordered_json template_to_json(const SpaceSpec& s, const Template& t, double lambda);

}  // namespace gmrg
