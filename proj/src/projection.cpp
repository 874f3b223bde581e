#include "gmrg/projection.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gmrg {

int FiniteSpace::find(const std::string& e) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == e) return static_cast<int>(i);
    return -1;
}

int ProjectionFamily::find_index(const std::vector<std::string>& idx) const {
    for (size_t i = 0; i < members.size(); ++i)
        if (members[i].index == idx) return static_cast<int>(i);
    return -1;
}

bool is_projection(const std::vector<int>& table, const FiniteSpace& omega) {
    if (table.size() != omega.size()) throw std::invalid_argument("map table is not total on the space");
    for (int t : table)
        if (t < 0 || t >= static_cast<int>(omega.size()))
            throw std::invalid_argument("map table is not total on the space");
    for (size_t w = 0; w < table.size(); ++w)
        if (table[table[w]] != table[w]) return false;
    return true;
}

namespace {

// Images as omega-position sets; empty optional marks substructure mode.
struct Analysis {
    bool subset_mode = true;
    std::vector<std::vector<int>> img_as_omega;  // member -> image position -> omega pos (-1)
    std::vector<std::set<int>> img_set;          // subset mode only

    void build(const ProjectionFamily& fam, const FiniteSpace& omega) {
        img_as_omega.resize(fam.members.size());
        img_set.resize(fam.members.size());
        for (size_t m = 0; m < fam.members.size(); ++m) {
            for (const auto& e : fam.members[m].image) {
                int p = omega.find(e);
                img_as_omega[m].push_back(p);
                if (p < 0)
                    subset_mode = false;
                else
                    img_set[m].insert(p);
            }
        }
    }
};

std::string index_str(const std::vector<std::string>& idx) {
    std::string s = "{";
    for (size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + idx[i];
    return s + "}";
}

std::vector<std::string> index_intersection(const std::vector<std::string>& a,
                                            const std::vector<std::string>& b) {
    std::vector<std::string> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool index_subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

std::vector<ValidationIssue> validate_family(const ProjectionFamily& fam, const FiniteSpace& omega) {
    std::vector<ValidationIssue> issues;
    {
        std::set<std::string> seen;
        for (const auto& e : omega.elements)
            if (!seen.insert(e).second)
                issues.push_back({0, "duplicate space element " + e});
    }
    std::set<std::vector<std::string>> seen_idx;
    for (const auto& m : fam.members) {
        if (!std::is_sorted(m.index.begin(), m.index.end()))
            issues.push_back({0, "index not sorted: " + index_str(m.index)});
        if (!seen_idx.insert(m.index).second)
            issues.push_back({0, "duplicate index " + index_str(m.index)});
        if (m.table.size() != omega.size())
            issues.push_back({0, "table not total for " + index_str(m.index)});
        std::vector<bool> hit(m.image.size(), false);
        for (int t : m.table) {
            if (t < 0 || t >= static_cast<int>(m.image.size())) {
                issues.push_back({0, "table value out of image range for " + index_str(m.index)});
                break;
            }
            hit[t] = true;
        }
        for (size_t i = 0; i < hit.size(); ++i)
            if (!hit[i])
                issues.push_back({0, "image element " + m.image[i] + " of " + index_str(m.index) +
                                         " is never attained"});
        for (const auto& t : m.index)
            if (!std::binary_search(fam.base.begin(), fam.base.end(), t))
                issues.push_back({0, "index token " + t + " outside the base"});
    }

    Analysis an;
    an.build(fam, omega);

    // Condition 1: the base index, when present, projects onto the space.
    int bpos = fam.find_index(fam.base);
    if (bpos >= 0) {
        std::set<std::string> img(fam.members[bpos].image.begin(), fam.members[bpos].image.end());
        std::set<std::string> om(omega.elements.begin(), omega.elements.end());
        if (img != om) issues.push_back({1, "base index image differs from the space"});
    }

    if (an.subset_mode) {
        // Projection-ness: image elements are fixed points.
        for (size_t m = 0; m < fam.members.size(); ++m) {
            for (size_t i = 0; i < fam.members[m].image.size(); ++i) {
                int p = an.img_as_omega[m][i];
                if (fam.members[m].table[p] != static_cast<int>(i)) {
                    issues.push_back({0, "member " + index_str(fam.members[m].index) +
                                             " does not fix its image point " + fam.members[m].image[i]});
                }
            }
        }
        for (size_t i = 0; i < fam.members.size(); ++i)
            for (size_t j = 0; j < fam.members.size(); ++j) {
                if (i == j) continue;
                const auto& A = fam.members[i].index;
                const auto& B = fam.members[j].index;
                bool idx_sub = index_subset(A, B);
                bool img_sub = std::includes(an.img_set[j].begin(), an.img_set[j].end(),
                                             an.img_set[i].begin(), an.img_set[i].end());
                if (idx_sub != img_sub)
                    issues.push_back({2, "index inclusion and image inclusion disagree for " +
                                             index_str(A) + ", " + index_str(B)});
                if (i < j) {
                    bool idx_disj = index_intersection(A, B).empty();
                    std::vector<int> inter;
                    std::set_intersection(an.img_set[i].begin(), an.img_set[i].end(),
                                          an.img_set[j].begin(), an.img_set[j].end(),
                                          std::back_inserter(inter));
                    if (idx_disj != inter.empty())
                        issues.push_back({3, "index disjointness and image disjointness disagree for " +
                                                 index_str(A) + ", " + index_str(B)});
                }
            }
    }
    return issues;
}

FamilyReport family_report(const ProjectionFamily& fam, const FiniteSpace& omega, std::uint64_t cap) {
    FamilyReport rep;
    Analysis an;
    an.build(fam, omega);
    rep.subset_mode = an.subset_mode;
    const size_t M = fam.members.size();
    const size_t N = omega.size();

    if (an.subset_mode) {
        // pos_table: member table in omega positions.
        std::vector<std::vector<int>> pt(M, std::vector<int>(N));
        for (size_t m = 0; m < M; ++m)
            for (size_t w = 0; w < N; ++w) pt[m][w] = an.img_as_omega[m][fam.members[m].table[w]];

        for (size_t i = 0; i < M; ++i)
            for (size_t j = 0; j < M; ++j) {
                if (i == j) continue;
                bool img_sub = std::includes(an.img_set[j].begin(), an.img_set[j].end(),
                                             an.img_set[i].begin(), an.img_set[i].end());
                if (!img_sub) continue;
                for (size_t w = 0; w < N; ++w)
                    if (pt[i][pt[j][w]] != pt[i][w]) {
                        rep.consistent = false;
                        rep.witnesses.push_back(
                            {"consistency", index_str(fam.members[i].index) + " after " +
                                                index_str(fam.members[j].index) + " differs at " +
                                                omega.elements[w]});
                        break;
                    }
            }

        for (size_t i = 0; i < M; ++i)
            for (size_t j = i + 1; j < M; ++j) {
                std::vector<int> inter;
                std::set_intersection(an.img_set[i].begin(), an.img_set[i].end(), an.img_set[j].begin(),
                                      an.img_set[j].end(), std::back_inserter(inter));
                if (inter.empty()) continue;

                // Constraint classes: pi3 must agree along both tables and
                // fix the intersection pointwise.
                std::vector<int> parent(N);
                std::iota(parent.begin(), parent.end(), 0);
                auto find = [&](auto&& self, int x) -> int {
                    while (parent[x] != x) x = parent[x] = parent[parent[x]];
                    return x;
                };
                auto unite = [&](int a, int b) {
                    a = find(find, a);
                    b = find(find, b);
                    if (a != b) parent[a] = b;
                };
                for (size_t w = 0; w < N; ++w) {
                    unite(static_cast<int>(w), pt[i][w]);
                    unite(static_cast<int>(w), pt[j][w]);
                }
                std::map<int, std::set<int>> anchors;  // class -> intersection members
                for (int p : inter) anchors[find(find, p)].insert(p);
                bool exists = true;
                for (const auto& [cls, set] : anchors)
                    if (set.size() > 1) {
                        exists = false;
                        rep.strongly_consistent = false;
                        rep.witnesses.push_back(
                            {"strong-consistency",
                             "no projection onto the intersection of " + index_str(fam.members[i].index) +
                                 " and " + index_str(fam.members[j].index) + ": " +
                                 omega.elements[*set.begin()] + " and " + omega.elements[*set.rbegin()] +
                                 " are identified"});
                        break;
                    }
                if (exists) {
                    std::set<int> classes;
                    for (size_t w = 0; w < N; ++w) classes.insert(find(find, static_cast<int>(w)));
                    size_t free_classes = 0;
                    for (int c : classes)
                        if (!anchors.count(c)) ++free_classes;
                    if (free_classes > 0 && inter.size() > 1) {
                        double choices = 1;
                        for (size_t f = 0; f < free_classes && choices <= static_cast<double>(cap); ++f)
                            choices *= static_cast<double>(inter.size());
                        rep.witnesses.push_back(
                            {"strong-consistency-uniqueness",
                             "projection onto the intersection of " + index_str(fam.members[i].index) +
                                 " and " + index_str(fam.members[j].index) + " is not unique (" +
                                 std::to_string(free_classes) + " unconstrained classes)"});
                    }
                }
            }
    } else {
        // Substructure mode: consistency through the bridge identities.
        for (size_t i = 0; i < M; ++i)
            for (size_t j = 0; j < M; ++j) {
                if (i == j) continue;
                if (!index_subset(fam.members[i].index, fam.members[j].index)) continue;
                // pi_{A_j -> A_i} is determined on the image of pi_{A_j}.
                std::map<int, int> bridge;
                bool ok = true;
                for (size_t w = 0; w < N && ok; ++w) {
                    auto [it, fresh] = bridge.emplace(fam.members[j].table[w], fam.members[i].table[w]);
                    if (!fresh && it->second != fam.members[i].table[w]) {
                        ok = false;
                        rep.consistent = false;
                        rep.witnesses.push_back(
                            {"consistency", "no bridge map from " + index_str(fam.members[j].index) +
                                                " to " + index_str(fam.members[i].index) +
                                                ": image point " +
                                                fam.members[j].image[fam.members[j].table[w]] +
                                                " has two preimages with different projections"});
                    }
                }
                rep.undetermined_bridge_points +=
                    static_cast<long long>(fam.members[j].image.size() - bridge.size());
            }
    }

    // Completeness: the index set is closed under intersections (subset
    // mode closes every pair; substructure mode only nonempty ones).
    for (size_t i = 0; i < M; ++i)
        for (size_t j = i + 1; j < M; ++j) {
            std::vector<std::string> inter =
                index_intersection(fam.members[i].index, fam.members[j].index);
            if (!an.subset_mode && inter.empty()) continue;
            if (fam.find_index(inter) < 0) {
                rep.complete = false;
                rep.witnesses.push_back({"completeness",
                                         "missing index " + index_str(inter) + " = " +
                                             index_str(fam.members[i].index) + " intersect " +
                                             index_str(fam.members[j].index)});
            }
        }

    if (!an.subset_mode) {
        // Strong consistency in substructure form: every nonempty index
        // intersection has a member and the bridge identities hold.
        rep.strongly_consistent = rep.consistent && rep.complete;
    }
    return rep;
}

AtomicReport atomic_analysis(const ProjectionFamily& fam, const FiniteSpace& omega) {
    FamilyReport rep = family_report(fam, omega);
    if (!rep.consistent || !rep.complete)
        throw std::invalid_argument("atomic analysis requires a consistent, complete family");
    if (fam.find_index(fam.base) < 0)
        throw std::invalid_argument("family does not contain the identity (base index)");

    AtomicReport out;
    const size_t M = fam.members.size();
    const size_t N = omega.size();

    for (size_t m = 0; m < M; ++m) {
        std::vector<size_t> smaller;
        for (size_t j = 0; j < M; ++j)
            if (j != m && index_subset(fam.members[j].index, fam.members[m].index) &&
                fam.members[j].index != fam.members[m].index)
                smaller.push_back(j);

        // Invertible over the image iff the tuple of smaller projections
        // separates points that pi_A separates.
        std::map<std::string, std::set<int>> tuple_to_value;
        for (size_t w = 0; w < N; ++w) {
            std::string key;
            for (size_t j : smaller) {
                key += std::to_string(fam.members[j].table[w]);
                key += ',';
            }
            tuple_to_value[key].insert(fam.members[m].table[w]);
        }
        bool invertible = true;
        for (const auto& [key, vals] : tuple_to_value)
            if (vals.size() > 1) invertible = false;
        if (!invertible) out.atomics.push_back(m);
    }

    out.representation = out.atomics;
    std::set<std::string> keys;
    bool injective = true;
    for (size_t w = 0; w < N; ++w) {
        std::string key;
        for (size_t m : out.representation) {
            key += std::to_string(fam.members[m].table[w]);
            key += ',';
        }
        if (!keys.insert(key).second) injective = false;
    }
    out.has_representation = injective;
    return out;
}

ProjectionFamily canonical_graph_family(const SpaceSpec& s, const std::vector<Graph>& space,
                                        FiniteSpace* omega_out) {
    FiniteSpace omega;
    std::map<std::string, int> pos;
    for (const auto& g : space) {
        pos[canon_key(g)] = static_cast<int>(omega.elements.size());
        omega.elements.push_back(canon_key(g));
    }

    ProjectionFamily fam;
    fam.base.push_back("*");
    for (int v = 0; v < s.num_vertices(); ++v) fam.base.push_back(s.vertex_space[v].id);
    std::sort(fam.base.begin(), fam.base.end());

    const int n = s.num_vertices();
    std::vector<int> masks;
    for (int mask = 0; mask < (1 << n); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](int a, int b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    for (int mask : masks) {
        FamilyMember m;
        std::vector<int> V;
        m.index.push_back("*");
        for (int v = 0; v < n; ++v)
            if (mask & (1 << v)) {
                V.push_back(v);
                m.index.push_back(s.vertex_space[v].id);
            }
        std::sort(m.index.begin(), m.index.end());
        m.name = "pi_" + index_str(std::vector<std::string>(m.index.begin() + 1, m.index.end()));

        std::map<std::string, int> img_pos;
        for (const auto& g : space) {
            if (std::includes(V.begin(), V.end(), g.verts.begin(), g.verts.end())) {
                img_pos[canon_key(g)] = static_cast<int>(m.image.size());
                m.image.push_back(canon_key(g));
            }
        }
        for (const auto& g : space) m.table.push_back(img_pos.at(canon_key(project(s, g, V))));
        fam.members.push_back(std::move(m));
    }
    if (omega_out) *omega_out = std::move(omega);
    return fam;
}

ProjectionFamily coordinate_family(int n, FiniteSpace* omega_out) {
    FiniteSpace omega;
    for (int x = 0; x < (1 << n); ++x) {
        std::string e;
        for (int i = 0; i < n; ++i) e += (x >> i) & 1 ? '1' : '0';
        omega.elements.push_back(e);
    }

    ProjectionFamily fam;
    for (int i = 0; i < n; ++i) fam.base.push_back("x" + std::to_string(i));
    std::sort(fam.base.begin(), fam.base.end());

    std::vector<int> masks;
    for (int mask = 0; mask < (1 << n); ++mask) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](int a, int b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    for (int mask : masks) {
        FamilyMember m;
        std::vector<int> coords;
        for (int i = 0; i < n; ++i)
            if (mask & (1 << i)) {
                coords.push_back(i);
                m.index.push_back("x" + std::to_string(i));
            }
        std::sort(m.index.begin(), m.index.end());
        m.name = "pi_" + index_str(m.index);

        std::map<std::string, int> img_pos;
        for (const auto& e : omega.elements) {
            std::string sub;
            for (int c : coords) sub += e[c];
            auto [it, fresh] = img_pos.emplace(sub, static_cast<int>(m.image.size()));
            if (fresh) m.image.push_back(sub);
            m.table.push_back(it->second);
        }
        fam.members.push_back(std::move(m));
    }
    if (omega_out) *omega_out = std::move(omega);
    return fam;
}

ProjectionFamily family_from_json(const json& j, FiniteSpace* omega_out) {
    FiniteSpace omega;
    for (const auto& e : j.at("omega"))
        omega.elements.push_back(e.is_string() ? e.get<std::string>() : e.dump());

    ProjectionFamily fam;
    std::set<std::string> base;
    for (const auto& mj : j.at("members")) {
        FamilyMember m;
        for (const auto& t : mj.at("index")) {
            m.index.push_back(t.is_string() ? t.get<std::string>() : t.dump());
            base.insert(m.index.back());
        }
        std::sort(m.index.begin(), m.index.end());
        m.name = mj.value("name", "pi_" + index_str(m.index));
        std::map<std::string, int> img_pos;
        for (const auto& e : mj.at("image")) {
            std::string key = e.is_string() ? e.get<std::string>() : e.dump();
            img_pos[key] = static_cast<int>(m.image.size());
            m.image.push_back(key);
        }
        m.table.assign(omega.size(), -1);
        for (const auto& [from, to] : mj.at("table").items()) {
            int w = omega.find(from);
            std::string key = to.is_string() ? to.get<std::string>() : to.dump();
            auto it = img_pos.find(key);
            if (w < 0 || it == img_pos.end())
                throw std::invalid_argument("table entry outside the space or image: " + from);
            m.table[w] = it->second;
        }
        for (int t : m.table)
            if (t < 0) throw std::invalid_argument("partial map table for " + index_str(m.index));
        fam.members.push_back(std::move(m));
    }
    if (j.contains("base"))
        for (const auto& t : j["base"]) base.insert(t.get<std::string>());
    fam.base.assign(base.begin(), base.end());
    if (omega_out) *omega_out = std::move(omega);
    return fam;
}

ordered_json family_report_to_json(const FamilyReport& r) {
    ordered_json o;
    o["consistent"] = r.consistent;
    o["strongly_consistent"] = r.strongly_consistent;
    o["complete"] = r.complete;
    o["mode"] = r.subset_mode ? "subset" : "substructure";
    if (r.undetermined_bridge_points) o["undetermined_bridge_points"] = r.undetermined_bridge_points;
    ordered_json ws = ordered_json::array();
    for (const auto& w : r.witnesses) ws.push_back({{"kind", w.kind}, {"detail", w.detail}});
    o["witnesses"] = std::move(ws);
    return o;
}

}  // namespace gmrg
