#pragma once

// Metropolis-Hastings over graph spaces: the three moves (add isolated
// vertex, delete isolated vertex, change an edge value), exact proposal
// ratios from the feasible-move menus in both states, and the sampler.

#include <array>
#include <cstdint>

#include "gmrg/model.hpp"
#include "gmrg/rng.hpp"

namespace gmrg {

struct KernelConfig {
    // Move-kind probabilities; an infeasible kind's mass is redistributed
    // proportionally among the feasible kinds.
    double p_add = 1.0 / 3.0;
    double p_delete = 1.0 / 3.0;
    double p_edge = 1.0 / 3.0;
    std::uint64_t seed = 0;
    long long steps = 1000;  // recorded samples
    long long burnin = 0;
    long long thin = 1;

    void validate() const;
};

// The feasible moves from a state, grouped by kind, with the effective
// kind probabilities.
struct MoveMenus {
    std::vector<Move> add, del, edge;
    double eff_add = 0.0, eff_del = 0.0, eff_edge = 0.0;

    std::size_t total() const { return add.size() + del.size() + edge.size(); }
};

MoveMenus enumerate_moves(const SpaceSpec& s, const Graph& g, const KernelConfig& cfg);

// log q(m | g) under the menu scheme.
double log_proposal_prob(const SpaceSpec& s, const Graph& g, const Move& m, const KernelConfig& cfg);

struct Proposal {
    Move move;
    Graph next;
    double log_q_fwd;  // log q(G' | G)
    double log_q_rev;  // log q(G | G')

    double log_q_ratio() const { return log_q_rev - log_q_fwd; }
};

Proposal propose(const SpaceSpec& s, const Graph& g, const KernelConfig& cfg, Rng& rng);

struct ChainResult {
    std::vector<Graph> samples;
    long long proposals = 0;
    long long accepted = 0;
    std::array<long long, 3> kind_counts{0, 0, 0};  // add, delete, edge
    std::uint64_t seed = 0;
};

// Algorithm: propose, accept with min(1, exp(dH + log q ratio)). The
// initial state must have a finite score. Deterministic per seed.
ChainResult mh_sample(const TemplateModel& m, const KernelConfig& cfg, const Graph& init);

// One in-place MH step; returns whether the proposal was accepted.
bool mh_step(const TemplateModel& m, const KernelConfig& cfg, Graph& state, Rng& rng);

}  // namespace gmrg
