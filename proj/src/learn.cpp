#include "gmrg/learn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmrg/errors.hpp"
#include "gmrg/kernels.hpp"

namespace gmrg {

void SAConfig::validate() const {
    if (iterations <= 0) throw std::invalid_argument("iterations must be positive");
    if (chains < 1) throw std::invalid_argument("need at least one chain");
    if (!(step_a > 0.0) || step_b < 0.0) throw std::invalid_argument("bad step schedule (need a > 0, b >= 0)");
    kernel.validate();
}

std::vector<double> empirical_stats(const SpaceSpec& s, const std::vector<Template>& templates,
                                    const std::vector<Graph>& data) {
    if (data.empty()) throw std::invalid_argument("empty data set");
    std::vector<double> mean(templates.size(), 0.0);
    for (const Graph& g : data) {
        std::vector<long long> u = count_matches(s, g, templates);
        for (size_t k = 0; k < mean.size(); ++k) mean[k] += static_cast<double>(u[k]);
    }
    for (double& v : mean) v /= static_cast<double>(data.size());
    return mean;
}

FitResult sa_fit(const TemplateModel& model_init, const std::vector<Graph>& data, const SAConfig& cfg) {
    cfg.validate();
    std::vector<double> u_hat = empirical_stats(model_init.spec, model_init.templates, data);
    const size_t K = model_init.templates.size();

    TemplateModel m = model_init;
    std::vector<bool> frozen(K);
    for (size_t k = 0; k < K; ++k) frozen[k] = m.lambdas[k] == kNegInf;

    // Persistent particles, initialized from the data cycled.
    std::vector<Graph> particles(cfg.chains);
    for (int c = 0; c < cfg.chains; ++c) particles[c] = data[c % data.size()];
    std::vector<Rng> rngs;
    rngs.reserve(cfg.chains);
    for (int c = 0; c < cfg.chains; ++c) rngs.emplace_back(split_seed(cfg.seed, c));

    std::vector<long long> sweeps_accepted(cfg.chains, 0), sweeps_total(cfg.chains, 0);

    FitResult res;
    res.seed = cfg.seed;
    res.trace.reserve(cfg.iterations);

    for (long long t = 1; t <= cfg.iterations; ++t) {
        std::vector<double> mean_u(K, 0.0);
        for (int c = 0; c < cfg.chains; ++c) {
            size_t sweep = std::max<size_t>(1, enumerate_moves(m.spec, particles[c], cfg.kernel).total());
            for (size_t stepi = 0; stepi < sweep; ++stepi) {
                sweeps_accepted[c] += mh_step(m, cfg.kernel, particles[c], rngs[c]) ? 1 : 0;
                ++sweeps_total[c];
            }
            std::vector<long long> u = count_matches(m.spec, particles[c], m.templates);
            for (size_t k = 0; k < K; ++k) mean_u[k] += static_cast<double>(u[k]);
        }
        for (double& v : mean_u) v /= static_cast<double>(cfg.chains);

        const double alpha = cfg.step_a / (cfg.step_b + static_cast<double>(t));
        for (size_t k = 0; k < K; ++k) {
            if (frozen[k]) continue;
            double grad = u_hat[k] - mean_u[k];
            grad = std::clamp(grad, -cfg.clip, cfg.clip);
            m.lambdas[k] += alpha * grad;
            if (std::fabs(m.lambdas[k]) > cfg.divergence_bound)
                throw divergence_error("lambda diverged at iteration " + std::to_string(t),
                                       static_cast<int>(t));
        }
        res.trace.push_back({m.lambdas, mean_u});
    }

    res.lambda = m.lambdas;
    res.acceptance_rates.resize(cfg.chains);
    for (int c = 0; c < cfg.chains; ++c)
        res.acceptance_rates[c] =
            sweeps_total[c] ? static_cast<double>(sweeps_accepted[c]) / sweeps_total[c] : 0.0;
    return res;
}

namespace {

struct ExactMoments {
    std::vector<std::vector<double>> features;  // per template, per graph
    size_t n = 0;

    void init(const TemplateModel& m, std::uint64_t cap) {
        std::vector<Graph> space = enumerate_space(m.spec, cap);
        n = space.size();
        features.assign(m.templates.size(), std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i) {
            std::vector<long long> u = count_matches(m.spec, space[i], m.templates);
            for (size_t k = 0; k < u.size(); ++k) features[k][i] = static_cast<double>(u[k]);
        }
    }

    // log Z and E[U] at the given weights.
    double eval(const std::vector<double>& lambda, std::vector<double>& expect) const {
        std::vector<double> scores(n, 0.0);
        for (size_t k = 0; k < lambda.size(); ++k)
            for (size_t i = 0; i < n; ++i) {
                double term = weight_times_count(lambda[k], static_cast<long long>(features[k][i]));
                if (term == kNegInf)
                    scores[i] = kNegInf;
                else if (scores[i] != kNegInf)
                    scores[i] += term;
            }
        double log_z = kernels::logsumexp(scores);
        if (log_z == kNegInf) throw degenerate_error("all graphs are excluded: empty effective support");
        std::vector<double> probs(n);
        for (size_t i = 0; i < n; ++i)
            probs[i] = scores[i] == kNegInf ? 0.0 : std::exp(scores[i] - log_z);
        double total = kernels::sum(probs);
        expect.resize(lambda.size());
        for (size_t k = 0; k < lambda.size(); ++k)
            expect[k] = kernels::dot(probs, features[k]) / total;
        return log_z;
    }
};

}  // namespace

std::vector<double> moment_gap(const TemplateModel& m, const std::vector<double>& u_hat,
                               std::uint64_t cap) {
    if (u_hat.size() != m.templates.size())
        throw std::invalid_argument("empirical statistics length mismatch");
    ExactMoments ex;
    ex.init(m, cap);
    std::vector<double> expect;
    ex.eval(m.lambdas, expect);
    for (size_t k = 0; k < expect.size(); ++k) expect[k] -= u_hat[k];
    return expect;
}

ExactFitResult exact_fit(const TemplateModel& model_init, const std::vector<double>& u_hat,
                         double tol, int max_iters, std::uint64_t cap) {
    if (u_hat.size() != model_init.templates.size())
        throw std::invalid_argument("empirical statistics length mismatch");
    ExactMoments ex;
    ex.init(model_init, cap);

    const size_t K = u_hat.size();
    std::vector<double> lambda = model_init.lambdas;
    std::vector<bool> frozen(K);
    for (size_t k = 0; k < K; ++k) frozen[k] = lambda[k] == kNegInf;

    auto loglik = [&](const std::vector<double>& l, std::vector<double>& expect) {
        double log_z = ex.eval(l, expect);
        double ll = -log_z;
        for (size_t k = 0; k < K; ++k)
            if (!frozen[k]) ll += l[k] * u_hat[k];
        return ll;
    };

    ExactFitResult res;
    std::vector<double> expect;
    double ll = loglik(lambda, expect);
    res.loglik_trace.push_back(ll);
    double step = 1.0;

    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> grad(K, 0.0);
        double gmax = 0.0;
        for (size_t k = 0; k < K; ++k) {
            if (frozen[k]) continue;
            grad[k] = u_hat[k] - expect[k];
            gmax = std::max(gmax, std::fabs(grad[k]));
        }
        res.iterations = it;
        res.gap_inf = gmax;
        if (gmax < tol) break;

        bool advanced = false;
        for (int tries = 0; tries < 60; ++tries) {
            std::vector<double> cand = lambda;
            for (size_t k = 0; k < K; ++k)
                if (!frozen[k]) cand[k] += step * grad[k];
            std::vector<double> cand_expect;
            double cand_ll = loglik(cand, cand_expect);
            if (cand_ll > ll) {
                lambda = std::move(cand);
                expect = std::move(cand_expect);
                ll = cand_ll;
                res.loglik_trace.push_back(ll);
                step *= 1.25;
                advanced = true;
                break;
            }
            step *= 0.5;
        }
        if (!advanced) break;  // at numerical stationarity
    }
    res.lambda = std::move(lambda);
    return res;
}

}  // namespace gmrg
