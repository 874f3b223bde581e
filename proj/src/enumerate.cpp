#include "gmrg/enumerate.hpp"

#include <cmath>
#include <limits>

#include "gmrg/errors.hpp"

namespace gmrg {

double space_size_bound(const SpaceSpec& s) {
    const int n = s.num_vertices();
    const int kmax = s.max_order ? std::min(*s.max_order, n) : n;
    if (s.attr_kind == AttrKind::real_vector)
        return std::numeric_limits<double>::infinity();
    const double na = s.attr_kind == AttrKind::finite ? s.num_attr_tokens() : 1.0;

    // Per-pair value count bounded by the vertex master alone; the
    // attribute master can only shrink it further.
    double max_adm = 1.0;
    if (s.master_vertex.present()) {
        double worst = 1.0;
        for (int u = 0; u < n && worst < s.num_edge_values(); ++u)
            for (int v = u + 1; v < n; ++v) {
                int cap = s.vertex_cap(u, v);
                int cnt = 0;
                for (int e = 0; e < s.num_edge_values(); ++e)
                    if (cap < 0 || s.edge_le(e, cap)) ++cnt;
                worst = std::max(worst, static_cast<double>(cnt));
            }
        max_adm = worst;
    } else {
        max_adm = s.num_edge_values();
    }

    double total = 0.0;
    double choose = 1.0;  // C(n, k)
    for (int k = 0; k <= kmax; ++k) {
        double pairs = 0.5 * k * (k - 1);
        double log_term = std::log(choose) + k * std::log(std::max(na, 1.0)) + pairs * std::log(max_adm);
        if (log_term > 700) return std::numeric_limits<double>::infinity();
        total += std::exp(log_term);
        choose = choose * (n - k) / (k + 1);
        if (!std::isfinite(total)) return total;
    }
    return total;
}

namespace {

struct Enumerator {
    const SpaceSpec& s;
    std::vector<Graph>& out;
    std::vector<int> subset;

    void attrs_and_edges() {
        const int k = static_cast<int>(subset.size());
        std::vector<json> attrs(k);
        if (s.attr_kind == AttrKind::finite) {
            std::vector<int> a(k, 0);
            while (true) {
                for (int i = 0; i < k; ++i) attrs[i] = s.attr_tokens[a[i]];
                edges(attrs);
                int pos = k - 1;
                while (pos >= 0 && ++a[pos] == s.num_attr_tokens()) a[pos--] = 0;
                if (pos < 0) break;
            }
        } else {
            edges({});
        }
    }

    void edges(const std::vector<json>& attrs) {
        const int k = static_cast<int>(subset.size());
        static const json null_attr;
        std::vector<std::pair<int, int>> pairs;
        std::vector<std::vector<int>> adm;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                int u = subset[i], v = subset[j];
                std::vector<int> vals;
                const json& xu = attrs.empty() ? null_attr : attrs[i];
                const json& xv = attrs.empty() ? null_attr : attrs[j];
                for (int e = 0; e < s.num_edge_values(); ++e)
                    if (s.edge_allowed(u, v, xu, xv, e)) vals.push_back(e);
                pairs.emplace_back(u, v);
                adm.push_back(std::move(vals));
            }

        std::vector<size_t> choice(pairs.size(), 0);
        while (true) {
            Graph g;
            g.verts = subset;
            g.attrs = attrs;
            for (size_t p = 0; p < pairs.size(); ++p) {
                int val = adm[p][choice[p]];
                if (val != s.zero) g.edges.push_back({pairs[p], val});
            }
            out.push_back(std::move(g));
            int pos = static_cast<int>(pairs.size()) - 1;
            while (pos >= 0 && ++choice[pos] == adm[pos].size()) choice[pos--] = 0;
            if (pos < 0) break;
        }
    }

    void subsets(int start, int remaining) {
        if (remaining == 0) {
            attrs_and_edges();
            return;
        }
        for (int i = start; i <= s.num_vertices() - remaining; ++i) {
            subset.push_back(i);
            subsets(i + 1, remaining - 1);
            subset.pop_back();
        }
    }
};

}  // namespace

std::vector<Graph> enumerate_space(const SpaceSpec& s, std::uint64_t cap) {
    double bound = space_size_bound(s);
    if (!(bound <= static_cast<double>(cap)))
        throw resource_error("space size bound " + std::to_string(bound) +
                             " exceeds the enumeration cap " + std::to_string(cap));
    std::vector<Graph> out;
    Enumerator en{s, out, {}};
    const int kmax = s.max_order ? std::min(*s.max_order, s.num_vertices()) : s.num_vertices();
    for (int k = 0; k <= kmax; ++k) en.subsets(0, k);
    return out;
}

}  // namespace gmrg
