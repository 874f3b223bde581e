#include "gmrg/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gmrg/enumerate.hpp"
#include "gmrg/errors.hpp"
#include "gmrg/kernels.hpp"
#include "gmrg/rng.hpp"

namespace gmrg {

AtomicIndex AtomicIndex::over(int n) {
    AtomicIndex a;
    for (int v = 0; v < n; ++v) a.members.push_back({v});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) a.members.push_back({u, v});
    return a;
}

int AtomicIndex::find(const std::vector<int>& v) const {
    for (size_t i = 0; i < members.size(); ++i)
        if (members[i] == v) return static_cast<int>(i);
    return -1;
}

NeighborhoodFunction NeighborhoodFunction::complete(int n) {
    NeighborhoodFunction f;
    f.idx = AtomicIndex::over(n);
    f.table.assign(f.idx.size(), std::vector<bool>(f.idx.size(), true));
    for (size_t i = 0; i < f.idx.size(); ++i) f.table[i][i] = false;
    return f;
}

NeighborhoodFunction NeighborhoodFunction::minimal(int n) {
    NeighborhoodFunction f;
    f.idx = AtomicIndex::over(n);
    f.table.assign(f.idx.size(), std::vector<bool>(f.idx.size(), false));
    for (size_t i = 0; i < f.idx.size(); ++i)
        for (size_t j = 0; j < f.idx.size(); ++j) {
            const auto& a = f.idx.members[i];
            const auto& b = f.idx.members[j];
            if (i != j && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                f.table[i][j] = true;
                f.table[j][i] = true;
            }
        }
    return f;
}

bool validate_neighborhood(const NeighborhoodFunction& n) {
    const size_t m = n.idx.size();
    if (n.table.size() != m) return false;
    for (size_t i = 0; i < m; ++i) {
        if (n.table[i].size() != m) return false;
        for (size_t j = 0; j < m; ++j)
            if (n.table[i][j] != n.table[j][i]) return false;
    }
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto& a = n.idx.members[i];
            const auto& b = n.idx.members[j];
            bool subset = a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
            if (subset && !n.table[i][j]) return false;
        }
    return true;
}

std::vector<std::vector<int>> clique_union_sets(const NeighborhoodFunction& n) {
    const size_t m = n.idx.size();
    std::set<std::vector<int>> out;
    // Every singleton collection is a clique.
    for (size_t i = 0; i < m; ++i) out.insert(n.idx.members[i]);

    // Grow cliques by adding positions in increasing order; each clique is
    // generated exactly once.
    std::vector<size_t> cur;
    auto unite = [&]() {
        std::set<int> u;
        for (size_t i : cur) u.insert(n.idx.members[i].begin(), n.idx.members[i].end());
        out.insert(std::vector<int>(u.begin(), u.end()));
    };
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() >= 2) unite();
        for (size_t j = start; j < m; ++j) {
            bool ok = true;
            for (size_t i : cur) ok = ok && n.table[i][j];
            if (!ok) continue;
            cur.push_back(j);
            self(self, j + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return std::vector<std::vector<int>>(out.begin(), out.end());
}

DistributionTable random_gibbs_wrt(const NeighborhoodFunction& n, const SpaceSpec& s,
                                   std::uint64_t seed, bool constant_mode, std::uint64_t cap) {
    if (!validate_neighborhood(n)) throw std::invalid_argument("invalid neighborhood function");
    std::vector<Graph> space = enumerate_space(s, cap);
    std::vector<std::vector<int>> vsets = clique_union_sets(n);

    Rng rng(seed);
    std::map<std::pair<size_t, std::string>, double> phi;
    std::vector<double> weight(space.size(), 1.0);
    for (size_t vi = 0; vi < vsets.size(); ++vi) {
        const auto& V = vsets[vi];
        for (size_t gi = 0; gi < space.size(); ++gi) {
            const Graph& g = space[gi];
            if (!std::includes(g.verts.begin(), g.verts.end(), V.begin(), V.end())) continue;
            std::string key = canon_key(induced_subgraph(g, V));
            auto it = phi.find({vi, key});
            if (it == phi.end())
                it = phi.emplace(std::make_pair(vi, key), constant_mode ? 1.0 : rng.next_range(0.1, 1.0)).first;
            weight[gi] *= it->second;
        }
    }
    double total = kernels::sum(weight);
    for (double& w : weight) w /= total;
    return make_dist(std::move(space), std::move(weight));
}

namespace {

std::string projection_key(const SpaceSpec& s, const Graph& g, const std::vector<int>& V) {
    return canon_key(project(s, g, V));
}

}  // namespace

bool is_markov(const SpaceSpec& s, const DistributionTable& d, const NeighborhoodFunction& n,
               double tol, long long* skipped) {
    const auto& idx = n.idx;
    for (size_t vi = 0; vi < idx.size(); ++vi) {
        const auto& V = idx.members[vi];
        std::vector<size_t> rest, nbrs;
        for (size_t j = 0; j < idx.size(); ++j) {
            if (j == vi) continue;
            const auto& W = idx.members[j];
            bool contains_v = std::includes(W.begin(), W.end(), V.begin(), V.end());
            if (contains_v) continue;  // u(V): V itself and every superset
            rest.push_back(j);
            if (n.table[vi][j]) nbrs.push_back(j);
        }

        auto sig = [&](const Graph& g, const std::vector<size_t>& which) {
            std::string key;
            for (size_t j : which) {
                key += projection_key(s, g, idx.members[j]);
                key += '#';
            }
            return key;
        };

        std::map<std::string, double> p_full, p_nbr;
        std::map<std::pair<std::string, std::string>, double> p_full_v, p_nbr_v;
        std::vector<std::string> full_of(d.size()), nbr_of(d.size()), val_of(d.size());
        for (size_t i = 0; i < d.size(); ++i) {
            full_of[i] = sig(d.support[i], rest);
            nbr_of[i] = sig(d.support[i], nbrs);
            val_of[i] = projection_key(s, d.support[i], V);
            p_full[full_of[i]] += d.probs[i];
            p_nbr[nbr_of[i]] += d.probs[i];
            p_full_v[{full_of[i], val_of[i]}] += d.probs[i];
            p_nbr_v[{nbr_of[i], val_of[i]}] += d.probs[i];
        }
        for (size_t i = 0; i < d.size(); ++i) {
            double pf = p_full[full_of[i]];
            if (pf <= 0.0) {
                if (skipped) ++*skipped;
                continue;
            }
            double lhs = p_full_v[{full_of[i], val_of[i]}] / pf;
            double rhs = p_nbr_v[{nbr_of[i], val_of[i]}] / p_nbr[nbr_of[i]];
            if (std::fabs(lhs - rhs) > tol) return false;
        }
    }
    return true;
}

double naive_model_eval(const SpaceSpec& s, const std::vector<double>& vertex_probs,
                        const std::map<std::pair<int, int>, std::vector<double>>& edge_conditionals,
                        const Graph& g) {
    const int n = s.num_vertices();
    if (static_cast<int>(vertex_probs.size()) != n)
        throw std::invalid_argument("vertex probability vector length mismatch");
    if (s.attributed()) throw std::invalid_argument("naive model is for unattributed spaces");
    for (double p : vertex_probs)
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("vertex probability outside [0,1]");
    for (const auto& [pr, tab] : edge_conditionals) {
        if (static_cast<int>(tab.size()) != s.num_edge_values())
            throw std::invalid_argument("edge conditional table has wrong arity");
        double total = 0.0;
        for (double p : tab) {
            if (p < 0) throw std::invalid_argument("negative conditional probability");
            total += p;
        }
        if (std::fabs(total - 1.0) > 1e-12)
            throw std::invalid_argument("edge conditional table is not normalized");
    }

    double prob = 1.0;
    for (int v = 0; v < n; ++v) prob *= g.has_vertex(v) ? vertex_probs[v] : 1.0 - vertex_probs[v];
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (!g.has_vertex(u) || !g.has_vertex(v)) continue;  // deterministic projection
            auto it = edge_conditionals.find({u, v});
            if (it == edge_conditionals.end())
                throw std::invalid_argument("missing edge conditional for a present pair");
            prob *= it->second[g.edge_value(u, v, s.zero)];
        }
    return prob;
}

int StructureGraph::find(const std::string& token) const {
    for (size_t i = 0; i < verts.size(); ++i)
        if (verts[i] == token) return static_cast<int>(i);
    return -1;
}

void StructureGraph::add_directed(const std::string& from, const std::string& to) {
    int a = find(from), b = find(to);
    if (a < 0 || b < 0) throw std::invalid_argument("unknown structure vertex");
    if (edges.count({b, a}) || edges.count({a, b}))
        throw std::invalid_argument("pair already has an edge mark");
    edges[{a, b}] = Mark::directed;
}

void StructureGraph::add_undirected(const std::string& a_, const std::string& b_) {
    int a = find(a_), b = find(b_);
    if (a < 0 || b < 0) throw std::invalid_argument("unknown structure vertex");
    if (a > b) std::swap(a, b);
    if (edges.count({a, b}) || edges.count({b, a}))
        throw std::invalid_argument("pair already has an edge mark");
    edges[{a, b}] = Mark::undirected;
}

ChainReport chain_analyze(const StructureGraph& h) {
    ChainReport rep;
    const int n = static_cast<int>(h.verts.size());

    // Undirected skeleton components.
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> und(n);
    for (const auto& [pr, mark] : h.edges)
        if (mark == StructureGraph::Mark::undirected) {
            und[pr.first].push_back(pr.second);
            und[pr.second].push_back(pr.first);
        }
    int nc = 0;
    for (int v = 0; v < n; ++v) {
        if (comp[v] >= 0) continue;
        std::deque<int> q{v};
        comp[v] = nc;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : und[x])
                if (comp[y] < 0) {
                    comp[y] = nc;
                    q.push_back(y);
                }
        }
        ++nc;
    }
    rep.components.assign(nc, {});
    for (int v = 0; v < n; ++v) rep.components[comp[v]].push_back(v);

    // Step graph: x -> y allowed when x - y, or when the arrow y -> x
    // exists (a partially directed cycle traverses arrows tail-last).
    std::vector<std::vector<int>> step(n);
    for (const auto& [pr, mark] : h.edges) {
        if (mark == StructureGraph::Mark::undirected) {
            step[pr.first].push_back(pr.second);
            step[pr.second].push_back(pr.first);
        } else {
            step[pr.second].push_back(pr.first);
        }
    }
    // A cycle exists iff some arrow a -> b admits a step-path a ~> b.
    for (const auto& [pr, mark] : h.edges) {
        if (mark != StructureGraph::Mark::directed) continue;
        int a = pr.first, b = pr.second;
        std::vector<int> parent(n, -2);
        std::deque<int> q{a};
        parent[a] = -1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : step[x])
                if (parent[y] == -2) {
                    parent[y] = x;
                    q.push_back(y);
                }
        }
        if (parent[b] != -2) {
            rep.is_chain_graph = false;
            std::vector<int> path;
            for (int x = b; x != -1; x = parent[x]) path.push_back(x);
            std::reverse(path.begin(), path.end());  // a ... b
            rep.cycle_witness.push_back(h.verts[b]);
            for (size_t i = 0; i + 1 < path.size(); ++i) rep.cycle_witness.push_back(h.verts[path[i]]);
            return rep;
        }
    }
    return rep;
}

namespace {

std::vector<int> token_vertex_set(const SpaceSpec& s, const std::string& token) {
    std::vector<int> out;
    std::stringstream ss(token);
    std::string part;
    while (std::getline(ss, part, ',')) {
        int v = s.vertex_index(part);
        if (v < 0) throw std::invalid_argument("structure token names unknown vertex: " + part);
        out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string atomic_signature(const SpaceSpec& s, const Graph& g, const std::vector<std::string>& tokens) {
    std::string key;
    for (const auto& tok : tokens) {
        key += canon_key(project(s, g, token_vertex_set(s, tok)));
        key += '#';
    }
    return key;
}

DistributionTable chain_eval(const SpaceSpec& s, const StructureGraph& h,
                             const std::vector<CliqueFactor>& factors, std::uint64_t cap) {
    ChainReport rep = chain_analyze(h);
    if (!rep.is_chain_graph) throw std::invalid_argument("structure graph has a partially directed cycle");
    const int n = static_cast<int>(h.verts.size());

    // Component parents: pa(K) = union of parents of its vertices, minus K.
    std::vector<int> comp_of(n);
    for (size_t c = 0; c < rep.components.size(); ++c)
        for (int v : rep.components[c]) comp_of[v] = static_cast<int>(c);
    std::vector<std::set<int>> parents(rep.components.size());
    for (const auto& [pr, mark] : h.edges)
        if (mark == StructureGraph::Mark::directed && comp_of[pr.first] != comp_of[pr.second])
            parents[comp_of[pr.second]].insert(pr.first);

    // Moral graph of H_{K u pa(K)} per component, for factor placement.
    std::vector<std::set<std::pair<int, int>>> moral(rep.components.size());
    for (size_t c = 0; c < rep.components.size(); ++c) {
        std::set<int> scope(rep.components[c].begin(), rep.components[c].end());
        scope.insert(parents[c].begin(), parents[c].end());
        auto& edges = moral[c];
        for (const auto& [pr, mark] : h.edges) {
            if (scope.count(pr.first) && scope.count(pr.second)) {
                int a = std::min(pr.first, pr.second), b = std::max(pr.first, pr.second);
                edges.insert({a, b});
            }
        }
        for (int a : parents[c])
            for (int b : parents[c])
                if (a < b) edges.insert({a, b});
    }

    // Assign each factor to the unique component containing its
    // non-parent members; check it sits inside a moral clique.
    std::vector<std::vector<size_t>> comp_factors(rep.components.size());
    for (size_t fi = 0; fi < factors.size(); ++fi) {
        std::set<int> touched;
        std::vector<int> positions;
        for (const auto& tok : factors[fi].over) {
            int p = h.find(tok);
            if (p < 0) throw std::invalid_argument("factor names unknown structure vertex: " + tok);
            positions.push_back(p);
            touched.insert(comp_of[p]);
        }
        int home = -1;
        for (int c : touched) {
            bool all_in_scope = true;
            for (int p : positions)
                all_in_scope = all_in_scope &&
                               (comp_of[p] == c || parents[c].count(p));
            bool touches = false;
            for (int p : positions) touches = touches || comp_of[p] == c;
            if (all_in_scope && touches) {
                if (home >= 0) throw std::invalid_argument("factor placement is ambiguous");
                home = c;
            }
        }
        if (home < 0) throw std::invalid_argument("factor spans components without a parent relation");
        // Pairwise moral adjacency within the factor scope.
        for (size_t i = 0; i < positions.size(); ++i)
            for (size_t j = i + 1; j < positions.size(); ++j) {
                int a = std::min(positions[i], positions[j]), b = std::max(positions[i], positions[j]);
                if (!moral[home].count({a, b}))
                    throw std::invalid_argument("factor is not contained in a moral clique");
            }
        comp_factors[home].push_back(fi);
    }

    std::vector<Graph> space = enumerate_space(s, cap);
    std::vector<double> prob(space.size(), 1.0);

    for (size_t c = 0; c < rep.components.size(); ++c) {
        std::vector<std::string> k_tokens, pa_tokens;
        for (int v : rep.components[c]) k_tokens.push_back(h.verts[v]);
        for (int v : parents[c]) pa_tokens.push_back(h.verts[v]);

        // Factor product for a graph, over this component's factors.
        auto numer = [&](const Graph& g) {
            double w = 1.0;
            for (size_t fi : comp_factors[c]) {
                const CliqueFactor& f = factors[fi];
                std::string key = atomic_signature(s, g, f.over);
                auto it = f.table.find(key);
                double v = it == f.table.end() ? f.fallback : it->second;
                if (v < 0) throw std::invalid_argument("negative factor value");
                w *= v;
            }
            return w;
        };

        std::map<std::string, double> z_of_parent;                  // pa-sig -> Z
        std::map<std::pair<std::string, std::string>, bool> seen;   // (pa-sig, K-sig)
        std::vector<std::string> pa_sig(space.size()), k_sig(space.size());
        std::vector<double> num(space.size());
        for (size_t i = 0; i < space.size(); ++i) {
            pa_sig[i] = atomic_signature(s, space[i], pa_tokens);
            k_sig[i] = atomic_signature(s, space[i], k_tokens);
            num[i] = numer(space[i]);
            auto key = std::make_pair(pa_sig[i], k_sig[i]);
            if (!seen.count(key)) {
                seen[key] = true;
                z_of_parent[pa_sig[i]] += num[i];
            }
        }
        for (size_t i = 0; i < space.size(); ++i) {
            double z = z_of_parent[pa_sig[i]];
            if (z <= 0.0)
                throw degenerate_error("zero normalizer for parent context [" + pa_sig[i] + "]");
            prob[i] *= num[i] / z;
        }
    }

    double total = kernels::sum(prob);
    if (std::fabs(total - 1.0) > 1e-9)
        throw std::invalid_argument(
            "chain factorization does not define a full distribution (structure misses a "
            "functional dependency); total mass " + std::to_string(total));
    for (double& p : prob) p /= total;
    return make_dist(std::move(space), std::move(prob));
}

StructureGraph structure_from_json(const json& j) {
    StructureGraph h;
    for (const auto& v : j.at("vertices")) h.verts.push_back(v.get<std::string>());
    if (j.contains("edges")) {
        for (const auto& e : j["edges"]) {
            std::string mark = e.at("mark").get<std::string>();
            if (mark == "directed")
                h.add_directed(e.at("a").get<std::string>(), e.at("b").get<std::string>());
            else if (mark == "undirected")
                h.add_undirected(e.at("a").get<std::string>(), e.at("b").get<std::string>());
            else
                throw std::invalid_argument("unknown edge mark: " + mark);
        }
    }
    return h;
}

ordered_json structure_to_json(const StructureGraph& h) {
    ordered_json o;
    o["vertices"] = h.verts;
    ordered_json es = ordered_json::array();
    for (const auto& [pr, mark] : h.edges) {
        ordered_json e;
        e["a"] = h.verts[pr.first];
        e["b"] = h.verts[pr.second];
        e["mark"] = mark == StructureGraph::Mark::directed ? "directed" : "undirected";
        es.push_back(std::move(e));
    }
    o["edges"] = std::move(es);
    return o;
}

}  // namespace gmrg
