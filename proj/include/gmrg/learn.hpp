#pragma once

// Maximum-likelihood fitting of template weights: stochastic approximation
// with parallel persistent chains, and an exact-gradient oracle for
// enumerable spaces.

#include <cstdint>
#include <vector>

#include "gmrg/mcmc.hpp"

namespace gmrg {

struct SAConfig {
    long long iterations = 20000;  // T
    int chains = 8;                // M
    double step_a = 0.1;           // alpha_t = a / (b + t)
    double step_b = 100.0;
    double clip = 10.0;              // per-component gradient clip
    double divergence_bound = 50.0;  // abort when any finite |lambda| exceeds this
    std::uint64_t seed = 0;
    KernelConfig kernel;  // move-kind probabilities for the particle sweeps

    void validate() const;
};

// Mean feature vector of the data.
std::vector<double> empirical_stats(const SpaceSpec& s, const std::vector<Template>& templates,
                                    const std::vector<Graph>& data);

struct TracePoint {
    std::vector<double> lambda;      // after the update
    std::vector<double> mean_stats;  // particle feature means driving it
};

struct FitResult {
    std::vector<double> lambda;
    std::vector<TracePoint> trace;
    std::vector<double> acceptance_rates;  // per chain
    std::uint64_t seed = 0;
};

// lambda^{t+1} = lambda^t + alpha_t [U_hat - mean_m U(G^{t+1,m})], one full
// MH sweep per particle per iteration, particles persisting across
// iterations. Entries fixed at -inf are frozen. Throws divergence_error
// with the iteration index when the guard trips.
FitResult sa_fit(const TemplateModel& model_init, const std::vector<Graph>& data, const SAConfig& cfg);

// E_lambda[U] - U_hat, exactly, via full normalization.
std::vector<double> moment_gap(const TemplateModel& m, const std::vector<double>& u_hat,
                               std::uint64_t cap = kDefaultEnumerationCap);

struct ExactFitResult {
    std::vector<double> lambda;
    int iterations = 0;
    double gap_inf = 0.0;                // final ||E[U] - U_hat||_inf
    std::vector<double> loglik_trace;    // per accepted step
};

// Gradient ascent on the exact log-likelihood with backtracking line
// search; monotone in the log-likelihood by construction.
ExactFitResult exact_fit(const TemplateModel& model_init, const std::vector<double>& u_hat,
                         double tol = 1e-8, int max_iters = 20000,
                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace gmrg
