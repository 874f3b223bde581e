#include "gmrg/iso.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "gmrg/errors.hpp"

namespace gmrg {

namespace {
constexpr double kDistanceTol = 1e-9;

double numeric_distance(const json& a, const json& b, bool l1) {
    auto as_vec = [](const json& x) {
        std::vector<double> v;
        if (x.is_number()) {
            v.push_back(x.get<double>());
        } else if (x.is_array()) {
            for (const auto& e : x) v.push_back(e.get<double>());
        } else {
            throw std::invalid_argument("attribute is not numeric: " + x.dump());
        }
        return v;
    };
    auto va = as_vec(a), vb = as_vec(b);
    if (va.size() != vb.size()) throw std::invalid_argument("attribute dimensions differ");
    double acc = 0.0;
    for (size_t i = 0; i < va.size(); ++i) {
        double d = va[i] - vb[i];
        acc += l1 ? std::fabs(d) : d * d;
    }
    return l1 ? acc : std::sqrt(acc);
}
}  // namespace

double attr_distance(const std::string& id, const json& a, const json& b) {
    if (id == "discrete") return a == b ? 0.0 : 1.0;
    if (id == "euclidean") return numeric_distance(a, b, false);
    if (id == "l1") return numeric_distance(a, b, true);
    throw std::invalid_argument("unknown distance function: " + id);
}

namespace {

// Backtracking bijection search. Candidates are filtered by a per-vertex
// signature, then extensions are checked pairwise against the already
// assigned vertices.
struct IsoSearch {
    const SpaceSpec& s;
    const Graph& a;
    const Graph& b;
    IsoOrder order;
    std::string dist;

    std::vector<std::string> sig_a, sig_b;
    std::vector<int> map_ab;  // position in a -> position in b
    std::vector<bool> used_b;

    std::string signature(const Graph& g, int pos) {
        int v = g.verts[pos];
        std::vector<int> counts(s.num_edge_values(), 0);
        for (const auto& [pr, val] : g.edges)
            if (pr.first == v || pr.second == v) ++counts[val];
        std::string sig;
        for (int c : counts) sig += std::to_string(c) + ";";
        if (order == IsoOrder::first && !g.attrs.empty()) sig += g.attrs[pos].dump();
        return sig;
    }

    bool pair_ok(int pa, int pb, int qa, int qb) {
        int ea = a.edge_value(a.verts[pa], a.verts[qa], s.zero);
        int eb = b.edge_value(b.verts[pb], b.verts[qb], s.zero);
        if (ea != eb) return false;
        if (order == IsoOrder::second) {
            double da = attr_distance(dist, a.attrs[pa], a.attrs[qa]);
            double db = attr_distance(dist, b.attrs[pb], b.attrs[qb]);
            if (std::fabs(da - db) > kDistanceTol) return false;
        }
        return true;
    }

    bool extend(int pos) {
        const int n = a.order();
        if (pos == n) return true;
        for (int pb = 0; pb < n; ++pb) {
            if (used_b[pb] || sig_a[pos] != sig_b[pb]) continue;
            if (order == IsoOrder::first && a.attrs[pos] != b.attrs[pb]) continue;
            if (order == IsoOrder::second) {
                double da = attr_distance(dist, a.attrs[pos], a.attrs[pos]);
                double db = attr_distance(dist, b.attrs[pb], b.attrs[pb]);
                if (std::fabs(da - db) > kDistanceTol) continue;
            }
            bool ok = true;
            for (int q = 0; q < pos && ok; ++q) ok = pair_ok(pos, pb, q, map_ab[q]);
            if (!ok) continue;
            map_ab[pos] = pb;
            used_b[pb] = true;
            if (extend(pos + 1)) return true;
            used_b[pb] = false;
        }
        return false;
    }

    bool run() {
        const int n = a.order();
        sig_a.resize(n);
        sig_b.resize(n);
        for (int i = 0; i < n; ++i) {
            sig_a[i] = signature(a, i);
            sig_b[i] = signature(b, i);
        }
        {
            auto sa = sig_a, sb = sig_b;
            std::sort(sa.begin(), sa.end());
            std::sort(sb.begin(), sb.end());
            if (sa != sb) return false;
        }
        map_ab.assign(n, -1);
        used_b.assign(n, false);
        return extend(0);
    }
};

}  // namespace

bool isomorphic(const SpaceSpec& s, const Graph& a, const Graph& b, IsoOrder order,
                const std::string& distance_id) {
    if (order != IsoOrder::plain && a.order() > 0 && b.order() > 0) {
        if (a.attrs.empty() || b.attrs.empty())
            throw std::invalid_argument("first/second-order isomorphism requires attributed graphs");
    }
    if (order == IsoOrder::second && distance_id.empty())
        throw std::invalid_argument("second-order isomorphism requires a distance function");
    if (a.order() != b.order()) return false;
    if (a.order() == 0) return true;
    if (a.edges.size() != b.edges.size()) return false;
    IsoSearch search{s, a, b, order, distance_id, {}, {}, {}, {}};
    return search.run();
}

bool compatibility(const SpaceSpec& s, const Graph& g, const Template& t) {
    if (!isomorphic(s, g, t.graph, t.iso_order, t.distance_id)) return false;
    return !t.connected_only || is_connected(g);
}

namespace {

// Wernicke-style enumeration of the connected induced subgraphs of a
// given order, each vertex subset exactly once.
template <class F>
void for_each_connected_subset(const Graph& g, int k, F&& emit) {
    const int n = g.order();
    if (k <= 0 || k > n) return;
    std::vector<std::vector<int>> nbr(n);
    for (const auto& [pr, val] : g.edges) {
        int i = g.vertex_pos(pr.first), j = g.vertex_pos(pr.second);
        nbr[i].push_back(j);
        nbr[j].push_back(i);
    }
    std::vector<int> sub;
    std::vector<bool> in_sub(n, false), in_ext(n, false);

    auto rec = [&](auto&& self, std::vector<int> ext, int root) -> void {
        if (static_cast<int>(sub.size()) == k) {
            emit(sub);
            return;
        }
        while (!ext.empty()) {
            int w = ext.back();
            ext.pop_back();
            in_ext[w] = false;
            std::vector<int> ext2 = ext;
            std::vector<int> added;
            for (int u : nbr[w]) {
                if (u > root && !in_sub[u] && !in_ext[u]) {
                    bool adjacent_to_sub = false;
                    for (int x : sub)
                        if (std::find(nbr[u].begin(), nbr[u].end(), x) != nbr[u].end()) {
                            adjacent_to_sub = true;
                            break;
                        }
                    if (!adjacent_to_sub) {
                        ext2.push_back(u);
                        in_ext[u] = true;
                        added.push_back(u);
                    }
                }
            }
            sub.push_back(w);
            in_sub[w] = true;
            self(self, ext2, root);
            in_sub[w] = false;
            sub.pop_back();
            for (int u : added) in_ext[u] = false;
        }
    };

    for (int v = 0; v < n; ++v) {
        std::vector<int> ext;
        for (int u : nbr[v])
            if (u > v) {
                ext.push_back(u);
                in_ext[u] = true;
            }
        sub.push_back(v);
        in_sub[v] = true;
        rec(rec, ext, v);
        in_sub[v] = false;
        sub.pop_back();
        for (int u : nbr[v])
            if (u > v) in_ext[u] = false;
    }
}

template <class F>
void for_each_subset(int n, int k, F&& emit) {
    if (k < 0 || k > n) return;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) {
            emit(subset);
            return;
        }
        for (int i = start; i <= n - remaining; ++i) {
            subset.push_back(i);
            self(self, i + 1, remaining - 1);
            subset.pop_back();
        }
    };
    rec(rec, 0, k);
}

}  // namespace

std::vector<long long> count_matches(const SpaceSpec& s, const Graph& g,
                                     const std::vector<Template>& templates) {
    std::vector<long long> counts(templates.size(), 0);
    std::set<int> orders;
    for (const auto& t : templates) orders.insert(t.graph.order());

    for (int k : orders) {
        std::vector<size_t> idx;
        bool all_connected = true;
        for (size_t i = 0; i < templates.size(); ++i)
            if (templates[i].graph.order() == k) {
                idx.push_back(i);
                all_connected = all_connected && templates[i].connected_only;
            }
        auto tally = [&](const std::vector<int>& positions) {
            std::vector<int> vs;
            vs.reserve(positions.size());
            for (int p : positions) vs.push_back(g.verts[p]);
            Graph sg = induced_subgraph(g, vs);
            for (size_t i : idx)
                if (compatibility(s, sg, templates[i])) ++counts[i];
        };
        if (all_connected && k >= 1) {
            for_each_connected_subset(g, k, tally);
        } else {
            for_each_subset(g.order(), k, tally);
        }
    }
    return counts;
}

std::vector<long long> count_matches_containing(const SpaceSpec& s, const Graph& g,
                                                const std::vector<Template>& templates,
                                                const std::vector<int>& required) {
    std::vector<long long> counts(templates.size(), 0);
    for (int v : required)
        if (!g.has_vertex(v)) throw std::invalid_argument("required vertex is not in the graph");

    std::vector<int> rest;
    for (int v : g.verts)
        if (std::find(required.begin(), required.end(), v) == required.end()) rest.push_back(v);

    std::set<int> orders;
    for (const auto& t : templates) orders.insert(t.graph.order());
    const int r = static_cast<int>(required.size());

    for (int k : orders) {
        if (k < r) continue;
        std::vector<size_t> idx;
        for (size_t i = 0; i < templates.size(); ++i)
            if (templates[i].graph.order() == k) idx.push_back(i);
        for_each_subset(static_cast<int>(rest.size()), k - r, [&](const std::vector<int>& extra) {
            std::vector<int> vs = required;
            for (int p : extra) vs.push_back(rest[p]);
            Graph sg = induced_subgraph(g, vs);
            for (size_t i : idx)
                if (compatibility(s, sg, templates[i])) ++counts[i];
        });
    }
    return counts;
}

Graph attribute_by_degree(const Graph& g, const std::vector<int>& thresholds,
                          const std::vector<json>& colors, bool overwrite) {
    for (size_t i = 1; i < thresholds.size(); ++i)
        if (thresholds[i] <= thresholds[i - 1])
            throw std::invalid_argument("thresholds must be strictly increasing");
    if (colors.size() != thresholds.size() + 1)
        throw std::invalid_argument("need one more color than thresholds");
    if (!g.attrs.empty() && !overwrite)
        throw std::invalid_argument("graph is already attributed (pass overwrite to replace)");

    Graph out = g;
    out.attrs.assign(g.verts.size(), json());
    for (size_t i = 0; i < g.verts.size(); ++i) {
        int d = g.degree(g.verts[i], 0);
        size_t bucket = 0;
        while (bucket < thresholds.size() && d > thresholds[bucket]) ++bucket;
        out.attrs[i] = colors[bucket];
    }
    return out;
}

ContractResult contract_parts(const SpaceSpec& s, const Graph& g, const std::vector<Template>& parts,
                              std::size_t occurrence_cap) {
    ContractResult res;

    for (size_t pi = 0; pi < parts.size(); ++pi) {
        const int k = parts[pi].graph.order();
        for_each_subset(g.order(), k, [&](const std::vector<int>& positions) {
            std::vector<int> vs;
            vs.reserve(positions.size());
            for (int p : positions) vs.push_back(g.verts[p]);
            Graph sg = induced_subgraph(g, vs);
            if (compatibility(s, sg, parts[pi])) res.occurrences.push_back({vs, static_cast<int>(pi)});
        });
    }
    if (res.occurrences.size() > occurrence_cap)
        throw resource_error("part occurrences (" + std::to_string(res.occurrences.size()) +
                             ") exceed the cap " + std::to_string(occurrence_cap));
    std::sort(res.occurrences.begin(), res.occurrences.end());

    std::set<int> covered;
    for (const auto& [vs, pi] : res.occurrences) covered.insert(vs.begin(), vs.end());
    for (int v : g.verts)
        if (!covered.count(v)) res.uncovered.push_back(v);

    // Second-level space: one vertex per occurrence; edge values count the
    // shared original vertices.
    int max_overlap = 0;
    for (const auto& p : parts) max_overlap = std::max(max_overlap, p.graph.order());
    SpaceSpec& sp = res.space;
    for (size_t i = 0; i < res.occurrences.size(); ++i)
        sp.vertex_space.push_back({"p" + std::to_string(i), std::nullopt, std::nullopt});
    for (int v = 0; v <= max_overlap; ++v) sp.edge_values.push_back(v);
    sp.zero = 0;
    for (int v = 0; v + 1 <= max_overlap; ++v) sp.order_covers.emplace_back(v, v + 1);
    sp.attr_kind = AttrKind::finite;
    for (size_t pi = 0; pi < parts.size(); ++pi) sp.attr_tokens.push_back(static_cast<int>(pi));
    if (sp.attr_tokens.empty()) sp.attr_tokens.push_back(0);
    sp.finalize();

    Graph& cg = res.graph;
    for (size_t i = 0; i < res.occurrences.size(); ++i) {
        cg.verts.push_back(static_cast<int>(i));
        cg.attrs.push_back(res.occurrences[i].second);
    }
    for (size_t i = 0; i < res.occurrences.size(); ++i)
        for (size_t j = i + 1; j < res.occurrences.size(); ++j) {
            const auto& a = res.occurrences[i].first;
            const auto& b = res.occurrences[j].first;
            int shared = 0;
            for (int v : a)
                if (std::find(b.begin(), b.end(), v) != b.end()) ++shared;
            if (shared > 0)
                cg.edges.push_back({{static_cast<int>(i), static_cast<int>(j)}, shared});
        }
    return res;
}

IsoOrder iso_order_from_string(const std::string& s) {
    if (s == "plain") return IsoOrder::plain;
    if (s == "first") return IsoOrder::first;
    if (s == "second") return IsoOrder::second;
    throw std::invalid_argument("unknown iso order: " + s);
}

std::string iso_order_to_string(IsoOrder o) {
    switch (o) {
        case IsoOrder::plain: return "plain";
        case IsoOrder::first: return "first";
        case IsoOrder::second: return "second";
    }
    return "plain";
}

}  // namespace gmrg
