#include "gmrg/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "gmrg/kernels.hpp"

namespace gmrg {

DistributionTable make_dist(std::vector<Graph> support, std::vector<double> probs) {
    if (support.size() != probs.size())
        throw std::invalid_argument("support and probability lists differ in length");
    std::vector<size_t> perm(support.size());
    std::iota(perm.begin(), perm.end(), size_t{0});
    std::sort(perm.begin(), perm.end(),
              [&](size_t a, size_t b) { return graph_less(support[a], support[b]); });

    DistributionTable d;
    d.support.reserve(support.size());
    d.probs.reserve(probs.size());
    for (size_t i : perm) {
        if (!d.support.empty() && d.support.back() == support[i])
            throw std::invalid_argument("support entries are not pairwise distinct");
        if (!(probs[i] >= 0.0)) throw std::invalid_argument("negative probability");
        d.support.push_back(std::move(support[i]));
        d.probs.push_back(probs[i]);
    }
    double total = kernels::sum(d.probs);
    if (std::fabs(total - 1.0) > 1e-12)
        throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
    return d;
}

DistributionTable marginal(const SpaceSpec& s, const DistributionTable& d, const std::vector<int>& V) {
    for (int v : V)
        if (v < 0 || v >= s.num_vertices())
            throw std::invalid_argument("marginal set contains labels outside the vertex space");

    std::map<std::string, size_t> pos;
    std::vector<Graph> support;
    std::vector<double> probs;
    // The projected space, taken from the input support (a full
    // enumeration), in the same canonical order.
    std::vector<int> vsorted = V;
    std::sort(vsorted.begin(), vsorted.end());
    for (size_t i = 0; i < d.size(); ++i) {
        const Graph& g = d.support[i];
        if (std::includes(vsorted.begin(), vsorted.end(), g.verts.begin(), g.verts.end())) {
            pos[canon_key(g)] = support.size();
            support.push_back(g);
            probs.push_back(0.0);
        }
    }
    for (size_t i = 0; i < d.size(); ++i) {
        Graph pg = project(s, d.support[i], vsorted);
        auto it = pos.find(canon_key(pg));
        if (it == pos.end())
            throw std::invalid_argument("support is not a full projectable enumeration");
        probs[it->second] += d.probs[i];
    }
    DistributionTable out;
    out.support = std::move(support);
    out.probs = std::move(probs);
    return out;
}

bool check_independence(const SpaceSpec& s, const DistributionTable& d, const std::vector<int>& V1,
                        const std::vector<int>& V2, double tol) {
    std::map<std::string, double> m1, m2;
    std::map<std::pair<std::string, std::string>, double> joint;
    for (size_t i = 0; i < d.size(); ++i) {
        std::string k1 = canon_key(project(s, d.support[i], V1));
        std::string k2 = canon_key(project(s, d.support[i], V2));
        m1[k1] += d.probs[i];
        m2[k2] += d.probs[i];
        joint[{k1, k2}] += d.probs[i];
    }
    for (const auto& [k1, p1] : m1)
        for (const auto& [k2, p2] : m2) {
            auto it = joint.find({k1, k2});
            double pj = it == joint.end() ? 0.0 : it->second;
            if (std::fabs(pj - p1 * p2) > tol) return false;
        }
    return true;
}

double mode_mass(const DistributionTable& d, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    double pmax = kernels::max(d.probs);
    double mass = 0.0;
    for (double p : d.probs)
        if (p > (1.0 - eps) * pmax) mass += p;
    return mass;
}

double tv_distance(const DistributionTable& a, const DistributionTable& b) {
    std::map<std::string, std::pair<double, double>> u;
    for (size_t i = 0; i < a.size(); ++i) u[canon_key(a.support[i])].first += a.probs[i];
    for (size_t i = 0; i < b.size(); ++i) u[canon_key(b.support[i])].second += b.probs[i];
    std::vector<double> pa, pb;
    pa.reserve(u.size());
    pb.reserve(u.size());
    for (const auto& [key, pq] : u) {
        pa.push_back(pq.first);
        pb.push_back(pq.second);
    }
    return 0.5 * kernels::l1_diff(pa, pb);
}

}  // namespace gmrg
