#include "gmrg/mcmc.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace gmrg {

void KernelConfig::validate() const {
    if (p_add < 0 || p_delete < 0 || p_edge < 0)
        throw std::invalid_argument("move-kind probabilities must be nonnegative");
    if (std::fabs(p_add + p_delete + p_edge - 1.0) > 1e-12)
        throw std::invalid_argument("move-kind probabilities must sum to 1");
    if (steps < 0 || burnin < 0 || thin <= 0)
        throw std::invalid_argument("bad chain length configuration");
}

MoveMenus enumerate_moves(const SpaceSpec& s, const Graph& g, const KernelConfig& cfg) {
    MoveMenus m;

    bool room = !s.max_order || g.order() < *s.max_order;
    if (room) {
        for (int v = 0; v < s.num_vertices(); ++v) {
            if (g.has_vertex(v)) continue;
            if (s.attr_kind == AttrKind::finite) {
                for (const auto& tok : s.attr_tokens) m.add.push_back(Move::add(v, tok));
            } else if (s.attr_kind == AttrKind::none) {
                m.add.push_back(Move::add(v));
            } else {
                throw std::invalid_argument("sampler requires a finite attribute space");
            }
        }
    }
    for (int v : g.verts)
        if (g.degree(v, s.zero) == 0) m.del.push_back(Move::del(v));
    for (size_t i = 0; i < g.verts.size(); ++i)
        for (size_t j = i + 1; j < g.verts.size(); ++j) {
            int u = g.verts[i], v = g.verts[j];
            int cur = g.edge_value(u, v, s.zero);
            for (int e = 0; e < s.num_edge_values(); ++e) {
                if (e == cur) continue;
                if (s.edge_allowed(u, v, g.attr_of(u), g.attr_of(v), e))
                    m.edge.push_back(Move::edge(u, v, e));
            }
        }

    double mass = 0.0;
    if (!m.add.empty()) mass += cfg.p_add;
    if (!m.del.empty()) mass += cfg.p_delete;
    if (!m.edge.empty()) mass += cfg.p_edge;
    if (mass > 0.0) {
        if (!m.add.empty()) m.eff_add = cfg.p_add / mass;
        if (!m.del.empty()) m.eff_del = cfg.p_delete / mass;
        if (!m.edge.empty()) m.eff_edge = cfg.p_edge / mass;
    }
    return m;
}

double log_proposal_prob(const SpaceSpec& s, const Graph& g, const Move& m, const KernelConfig& cfg) {
    MoveMenus menus = enumerate_moves(s, g, cfg);
    switch (m.kind) {
        case Move::Kind::add_vertex:
            if (menus.add.empty() || menus.eff_add == 0.0) return kNegInf;
            return std::log(menus.eff_add) - std::log(static_cast<double>(menus.add.size()));
        case Move::Kind::delete_vertex:
            if (menus.del.empty() || menus.eff_del == 0.0) return kNegInf;
            return std::log(menus.eff_del) - std::log(static_cast<double>(menus.del.size()));
        case Move::Kind::set_edge:
            if (menus.edge.empty() || menus.eff_edge == 0.0) return kNegInf;
            return std::log(menus.eff_edge) - std::log(static_cast<double>(menus.edge.size()));
    }
    return kNegInf;
}

namespace {

Move inverse_move(const SpaceSpec& s, const Graph& g, const Move& m) {
    switch (m.kind) {
        case Move::Kind::add_vertex:
            return Move::del(m.v);
        case Move::Kind::delete_vertex: {
            int pos = g.vertex_pos(m.v);
            json attr = g.attrs.empty() ? json() : g.attrs[pos];
            return Move::add(m.v, attr);
        }
        case Move::Kind::set_edge:
            return Move::edge(m.u, m.v, g.edge_value(m.u, m.v, s.zero));
    }
    return m;
}

}  // namespace

Proposal propose(const SpaceSpec& s, const Graph& g, const KernelConfig& cfg, Rng& rng) {
    MoveMenus menus = enumerate_moves(s, g, cfg);
    if (menus.total() == 0) throw std::invalid_argument("no feasible move from this state");

    double u = rng.next_unit();
    const std::vector<Move>* menu = nullptr;
    double eff = 0.0;
    if (u < menus.eff_add && !menus.add.empty()) {
        menu = &menus.add;
        eff = menus.eff_add;
    } else if (u < menus.eff_add + menus.eff_del && !menus.del.empty()) {
        menu = &menus.del;
        eff = menus.eff_del;
    } else if (!menus.edge.empty()) {
        menu = &menus.edge;
        eff = menus.eff_edge;
    } else if (!menus.del.empty()) {
        menu = &menus.del;
        eff = menus.eff_del;
    } else {
        menu = &menus.add;
        eff = menus.eff_add;
    }

    Proposal p;
    p.move = (*menu)[rng.next_below(menu->size())];
    p.log_q_fwd = std::log(eff) - std::log(static_cast<double>(menu->size()));
    p.next = apply_move(s, g, p.move);
    Move inv = inverse_move(s, g, p.move);
    p.log_q_rev = log_proposal_prob(s, p.next, inv, cfg);
    return p;
}

bool mh_step(const TemplateModel& m, const KernelConfig& cfg, Graph& state, Rng& rng) {
    Proposal p = propose(m.spec, state, cfg, rng);
    double dh = delta_H(m, state, p.move);
    double alpha = dh == kNegInf ? 0.0 : std::min(1.0, std::exp(dh + p.log_q_ratio()));
    double u = rng.next_unit();
    if (u < alpha) {
        assert(respects_master(m.spec, p.next));
        state = std::move(p.next);
        return true;
    }
    return false;
}

ChainResult mh_sample(const TemplateModel& m, const KernelConfig& cfg, const Graph& init) {
    cfg.validate();
    if (template_log_score(m, init) == kNegInf)
        throw std::invalid_argument("initial state is excluded by the model (score -inf)");

    ChainResult res;
    res.seed = cfg.seed;
    res.samples.reserve(cfg.steps);
    Rng rng(cfg.seed);
    Graph state = init;

    const long long total = cfg.burnin + cfg.steps * cfg.thin;
    for (long long t = 0; t < total; ++t) {
        Proposal p = propose(m.spec, state, cfg, rng);
        ++res.proposals;
        ++res.kind_counts[static_cast<int>(p.move.kind)];
        double dh = delta_H(m, state, p.move);
        double alpha = dh == kNegInf ? 0.0 : std::min(1.0, std::exp(dh + p.log_q_ratio()));
        double u = rng.next_unit();
        if (u < alpha) {
            ++res.accepted;
            state = std::move(p.next);
        }
        if (t >= cfg.burnin && (t - cfg.burnin + 1) % cfg.thin == 0) res.samples.push_back(state);
    }
    return res;
}

}  // namespace gmrg
