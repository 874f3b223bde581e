#include "gmrg/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmrg/errors.hpp"
#include "gmrg/kernels.hpp"

namespace gmrg {

double PotentialSet::lookup(int order, const std::string& key, long long* missing) const {
    auto oit = psi.find(order);
    if (oit != psi.end()) {
        auto kit = oit->second.find(key);
        if (kit != oit->second.end()) return kit->second;
    }
    if (missing) ++*missing;
    return 0.0;
}

double gibbs_log_score(const PotentialSet& pot, const Graph& g, long long* missing) {
    double total = pot.psi0;
    for (int k = 1; k <= g.order(); ++k) {
        for (const Graph& sg : subgraphs(g, k)) {
            double v = pot.lookup(k, canon_key(sg), missing);
            if (v == kNegInf) return kNegInf;
            total += v;
        }
    }
    return total;
}

PotentialSet mobius_potentials(const SpaceSpec& s, const DistributionTable& d) {
    std::map<std::string, double> logp;
    for (size_t i = 0; i < d.size(); ++i) {
        if (!(d.probs[i] > 0.0))
            throw std::invalid_argument("positivity violated: zero probability in support");
        logp[canon_key(d.support[i])] = std::log(d.probs[i]);
    }
    auto it0 = logp.find(canon_key(Graph{}));
    if (it0 == logp.end())
        throw std::invalid_argument("support does not contain the empty graph");
    const double log_empty = it0->second;

    PotentialSet pot;
    pot.psi0 = log_empty;

    for (const Graph& g : d.support) {
        const int n = g.order();
        if (n == 0) continue;
        // phi over subsets of V(G), indexed by bitmask.
        std::vector<double> phi(size_t{1} << n, 0.0);
        for (size_t mask = 1; mask < phi.size(); ++mask) {
            std::vector<int> w;
            for (int i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) w.push_back(g.verts[i]);
            auto it = logp.find(canon_key(induced_subgraph(g, w)));
            if (it == logp.end())
                throw std::invalid_argument("support is not a full projectable enumeration");
            phi[mask] = it->second - log_empty;
        }
        for (size_t mask = 1; mask < phi.size(); ++mask) {
            int bits = __builtin_popcountll(mask);
            double psi = 0.0;
            for (size_t sub = mask;; sub = (sub - 1) & mask) {
                int sb = __builtin_popcountll(sub);
                psi += ((bits - sb) % 2 == 0 ? 1.0 : -1.0) * phi[sub];
                if (sub == 0) break;
            }
            std::vector<int> w;
            for (int i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) w.push_back(g.verts[i]);
            std::string key = canon_key(induced_subgraph(g, w));
            auto& slot = pot.psi[bits];
            auto kit = slot.find(key);
            if (kit == slot.end()) {
                slot[key] = psi;
            } else if (std::fabs(kit->second - psi) > 1e-9) {
                // The proof's psi_G(W)-depends-only-on-G_W property.
                throw std::logic_error("potential is not a function of the projected subgraph");
            }
        }
    }
    return pot;
}

std::vector<long long> feature_counts(const TemplateModel& m, const Graph& g) {
    return count_matches(m.spec, g, m.templates);
}

double template_log_score(const TemplateModel& m, const Graph& g) {
    std::vector<long long> u = feature_counts(m, g);
    double total = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        double term = weight_times_count(m.lambdas[k], u[k]);
        if (term == kNegInf) return kNegInf;
        total += term;
    }
    return total;
}

NormalizeResult normalize(const TemplateModel& m, std::uint64_t cap) {
    std::vector<Graph> space = enumerate_space(m.spec, cap);
    std::vector<double> scores(space.size());
    for (size_t i = 0; i < space.size(); ++i) scores[i] = template_log_score(m, space[i]);

    double log_z = kernels::logsumexp(scores);
    if (log_z == kNegInf)
        throw degenerate_error("all graphs are excluded: empty effective support");

    std::vector<double> probs(space.size());
    for (size_t i = 0; i < space.size(); ++i)
        probs[i] = scores[i] == kNegInf ? 0.0 : std::exp(scores[i] - log_z);
    // Exact renormalization guards the 1e-12 table invariant.
    double total = kernels::sum(probs);
    for (double& p : probs) p /= total;

    NormalizeResult res;
    res.log_z = log_z;
    res.z = std::exp(log_z);
    res.dist = make_dist(std::move(space), std::move(probs));
    return res;
}

namespace {

double state_delta_term(const TemplateModel& m, const std::vector<long long>& u) {
    double total = 0.0;
    for (size_t k = 0; k < u.size(); ++k) {
        double term = weight_times_count(m.lambdas[k], u[k]);
        if (term == kNegInf) return kNegInf;
        total += term;
    }
    return total;
}

}  // namespace

double delta_H(const TemplateModel& m, const Graph& g_old, const Move& move) {
    if (!move_valid(m.spec, g_old, move)) throw std::invalid_argument("invalid move");
    Graph g_new = apply_move(m.spec, g_old, move);

    std::vector<long long> gained, lost;
    switch (move.kind) {
        case Move::Kind::add_vertex:
            gained = count_matches_containing(m.spec, g_new, m.templates, {move.v});
            lost.assign(m.templates.size(), 0);
            break;
        case Move::Kind::delete_vertex:
            gained.assign(m.templates.size(), 0);
            lost = count_matches_containing(m.spec, g_old, m.templates, {move.v});
            break;
        case Move::Kind::set_edge:
            gained = count_matches_containing(m.spec, g_new, m.templates, {move.u, move.v});
            lost = count_matches_containing(m.spec, g_old, m.templates, {move.u, move.v});
            break;
    }
    double t_new = state_delta_term(m, gained);
    double t_old = state_delta_term(m, lost);
    if (t_new == kNegInf) return kNegInf;
    if (t_old == kNegInf) return std::numeric_limits<double>::infinity();
    return t_new - t_old;
}

namespace {

DistributionTable edge_conditional_from_psi2(const SpaceSpec& s, const std::vector<int>& V,
                                             const std::map<std::string, double>& psi2_by_key) {
    if (s.num_edge_values() != 2)
        throw std::invalid_argument("classic conditional models require a binary edge space");
    if (s.master_vertex.present() || s.master_attr.present())
        throw std::invalid_argument("classic conditional models assume an unconstrained space");
    if (s.attributed())
        throw std::invalid_argument("classic conditional models use unattributed graphs");

    std::vector<int> vs = V;
    std::sort(vs.begin(), vs.end());
    const int one = s.zero == 0 ? 1 : 0;

    std::vector<std::pair<int, int>> pairs;
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) pairs.emplace_back(vs[i], vs[j]);

    PotentialSet pot;
    std::vector<Graph> support;
    std::vector<double> probs;
    std::vector<bool> bits(pairs.size(), false);
    while (true) {
        Graph g;
        g.verts = vs;
        for (size_t p = 0; p < pairs.size(); ++p)
            if (bits[p]) g.edges.push_back({pairs[p], one});
        double score = 0.0;
        for (const Graph& sg : subgraphs(g, 2)) {
            auto it = psi2_by_key.find(canon_key(sg));
            if (it == psi2_by_key.end()) throw std::logic_error("missing pair potential");
            if (it->second == kNegInf) {
                score = kNegInf;
                break;
            }
            score += it->second;
        }
        support.push_back(std::move(g));
        probs.push_back(score == kNegInf ? 0.0 : std::exp(score));

        size_t pos = 0;
        while (pos < bits.size() && bits[pos]) bits[pos++] = false;
        if (pos == bits.size()) break;
        bits[pos] = true;
    }
    // The product law is normalized by construction; renormalize the
    // floating-point residue only.
    double total = kernels::sum(probs);
    if (std::fabs(total - 1.0) > 1e-9) throw std::logic_error("conditional law failed to normalize");
    for (double& p : probs) p /= total;
    return make_dist(std::move(support), std::move(probs));
}

}  // namespace

DistributionTable classic_erdos_renyi(const SpaceSpec& s, const std::vector<int>& V, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
    const int one = s.zero == 0 ? 1 : 0;
    std::map<std::string, double> psi2;
    std::vector<int> vs = V;
    std::sort(vs.begin(), vs.end());
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            Graph no_edge, with_edge;
            no_edge.verts = {vs[i], vs[j]};
            with_edge.verts = {vs[i], vs[j]};
            with_edge.edges.push_back({{vs[i], vs[j]}, one});
            psi2[canon_key(no_edge)] = p == 1.0 ? kNegInf : std::log1p(-p);
            psi2[canon_key(with_edge)] = p == 0.0 ? kNegInf : std::log(p);
        }
    return edge_conditional_from_psi2(s, V, psi2);
}

DistributionTable classic_blockmodel(const SpaceSpec& s, const std::vector<int>& V,
                                     const std::map<std::pair<std::string, std::string>, double>& p) {
    for (const auto& [key, val] : p) {
        auto it = p.find({key.second, key.first});
        if (it == p.end() || std::fabs(it->second - val) > 0)
            throw std::invalid_argument("blockmodel table is not symmetric");
        if (!(val >= 0.0 && val <= 1.0)) throw std::invalid_argument("blockmodel probability outside [0,1]");
    }
    const int one = s.zero == 0 ? 1 : 0;
    std::map<std::string, double> psi2;
    std::vector<int> vs = V;
    std::sort(vs.begin(), vs.end());
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = i + 1; j < vs.size(); ++j) {
            const auto& cu = s.vertex_space[vs[i]].color;
            const auto& cv = s.vertex_space[vs[j]].color;
            if (!cu || !cv) throw std::invalid_argument("blockmodel requires labeled vertices");
            auto it = p.find({*cu, *cv});
            if (it == p.end()) throw std::invalid_argument("blockmodel table misses label pair " + *cu + "," + *cv);
            double pe = it->second;
            Graph no_edge, with_edge;
            no_edge.verts = {vs[i], vs[j]};
            with_edge.verts = {vs[i], vs[j]};
            with_edge.edges.push_back({{vs[i], vs[j]}, one});
            psi2[canon_key(no_edge)] = pe == 1.0 ? kNegInf : std::log1p(-pe);
            psi2[canon_key(with_edge)] = pe == 0.0 ? kNegInf : std::log(pe);
        }
    return edge_conditional_from_psi2(s, V, psi2);
}

Template template_from_json(const SpaceSpec& s, const json& j, double* lambda_out) {
    Template t;
    t.graph = graph_from_json(s, j.at("graph"));
    if (t.graph.order() == 0) throw std::invalid_argument("template graph must be nonempty");
    t.iso_order = iso_order_from_string(j.value("iso_order", "plain"));
    t.distance_id = j.value("distance", "");
    t.connected_only = j.value("connected_only", false);
    if (t.iso_order == IsoOrder::second && t.distance_id.empty())
        throw std::invalid_argument("second-order template requires a distance function");
    if (t.iso_order != IsoOrder::plain && t.graph.attrs.empty())
        throw std::invalid_argument("first/second-order template requires attributes");
    if (lambda_out) {
        const json& lj = j.at("lambda");
        *lambda_out = lj.is_string() ? (lj.get<std::string>() == "-inf"
                                            ? kNegInf
                                            : throw std::invalid_argument("bad lambda string"))
                                     : lj.get<double>();
    }
    return t;
}

ordered_json template_to_json(const SpaceSpec& s, const Template& t, double lambda) {
    ordered_json o;
    o["graph"] = graph_to_json(s, t.graph);
    o["iso_order"] = iso_order_to_string(t.iso_order);
    if (!t.distance_id.empty()) o["distance"] = t.distance_id;
    o["connected_only"] = t.connected_only;
    if (lambda == kNegInf)
        o["lambda"] = "-inf";
    else
        o["lambda"] = lambda;
    return o;
}

TemplateModel model_from_json(const json& j) {
    TemplateModel m;
    m.spec = space_from_json(j.at("spec"));
    for (const auto& tj : j.at("templates")) {
        double lambda = 0.0;
        m.templates.push_back(template_from_json(m.spec, tj, &lambda));
        m.lambdas.push_back(lambda);
    }
    return m;
}

ordered_json model_to_json(const TemplateModel& m) {
    ordered_json o;
    o["spec"] = space_to_json(m.spec);
    ordered_json ts = ordered_json::array();
    for (size_t i = 0; i < m.templates.size(); ++i)
        ts.push_back(template_to_json(m.spec, m.templates[i], m.lambdas[i]));
    o["templates"] = std::move(ts);
    return o;
}

}  // namespace gmrg
