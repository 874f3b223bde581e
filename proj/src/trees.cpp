#include "gmrg/trees.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace gmrg {

namespace {
constexpr double kNegInfT = -std::numeric_limits<double>::infinity();

bool tree_vertex_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}
}  // namespace

bool BranchTree::contains(const std::string& v) const {
    return std::binary_search(verts.begin(), verts.end(), v, tree_vertex_less);
}

int BranchTree::depth() const {
    int d = -1;
    for (const auto& v : verts) d = std::max(d, static_cast<int>(v.size()));
    return d;
}

std::vector<std::string> BranchTree::children(const std::string& v) const {
    std::vector<std::string> out;
    for (char b : {'0', '1'})
        if (contains(v + b)) out.push_back(v + b);
    return out;
}

std::vector<std::string> BranchTree::leaves() const {
    std::vector<std::string> out;
    for (const auto& v : verts)
        if (children(v).empty()) out.push_back(v);
    return out;
}

bool BranchTree::operator<(const BranchTree& o) const {
    if (verts != o.verts) {
        return std::lexicographical_compare(verts.begin(), verts.end(), o.verts.begin(), o.verts.end(),
                                            tree_vertex_less);
    }
    return json(attrs).dump() < json(o.attrs).dump();
}

BranchTree make_tree(std::vector<std::string> verts, std::map<std::string, json> attrs, int max_depth) {
    std::sort(verts.begin(), verts.end(), tree_vertex_less);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    BranchTree t;
    t.verts = std::move(verts);
    for (const auto& v : t.verts) {
        for (char c : v)
            if (c != '0' && c != '1') throw std::invalid_argument("bad branch index in vertex: " + v);
        if (max_depth >= 0 && static_cast<int>(v.size()) > max_depth)
            throw std::invalid_argument("vertex exceeds the depth cap: " + v);
        if (!v.empty() && !t.contains(v.substr(0, v.size() - 1)))
            throw std::invalid_argument("vertex set is not ancestor closed at " + v);
    }
    if (!attrs.empty()) {
        for (const auto& v : t.verts)
            if (!attrs.count(v)) throw std::invalid_argument("attribute map is not total at " + v);
        for (const auto& [v, a] : attrs)
            if (!t.contains(v)) throw std::invalid_argument("attribute on a non-vertex: " + v);
        t.attrs = std::move(attrs);
    }
    return t;
}

BranchTree tree_project(const BranchTree& t, const BranchTree& v) {
    // V must itself be a tree; make_tree enforced that on construction,
    // re-check closure cheaply in case the caller assembled it by hand.
    for (const auto& w : v.verts)
        if (!w.empty() && !v.contains(w.substr(0, w.size() - 1)))
            throw std::invalid_argument("projection set is not a tree");
    BranchTree out;
    for (const auto& w : t.verts)
        if (v.contains(w)) {
            out.verts.push_back(w);
            auto it = t.attrs.find(w);
            if (it != t.attrs.end()) out.attrs[w] = it->second;
        }
    return out;
}

ShiftedTree shifted_project(const BranchTree& t, const std::string& v0) {
    ShiftedTree out;
    out.root = v0;
    if (!t.contains(v0)) return out;
    for (const auto& w : t.verts) {
        if (w.size() >= v0.size() && w.compare(0, v0.size(), v0) == 0) {
            std::string rel = w.substr(v0.size());
            out.sub.verts.push_back(rel);
            auto it = t.attrs.find(w);
            if (it != t.attrs.end()) out.sub.attrs[rel] = it->second;
        }
    }
    std::sort(out.sub.verts.begin(), out.sub.verts.end(), tree_vertex_less);
    return out;
}

std::vector<BranchTree> path_tree_decomposition(const BranchTree& t) {
    std::vector<BranchTree> out;
    for (const auto& leaf : t.leaves()) {
        BranchTree p;
        for (size_t k = 0; k <= leaf.size(); ++k) {
            std::string anc = leaf.substr(0, k);
            p.verts.push_back(anc);
            auto it = t.attrs.find(anc);
            if (it != t.attrs.end()) p.attrs[anc] = it->second;
        }
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

std::string canon_code(const BranchTree& t, const std::string& v) {
    std::vector<std::string> codes;
    for (const auto& c : t.children(v)) codes.push_back(canon_code(t, c));
    std::sort(codes.begin(), codes.end());
    std::string out = "(";
    auto it = t.attrs.find(v);
    if (it != t.attrs.end()) out += it->second.dump() + "!";
    for (const auto& c : codes) out += c;
    out += ")";
    return out;
}

}  // namespace

bool rooted_isomorphic(const BranchTree& a, const BranchTree& b) {
    if (a.attrs.empty() != b.attrs.empty() && !a.empty() && !b.empty())
        throw std::invalid_argument("cannot compare attributed with unattributed trees");
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    return canon_code(a, "") == canon_code(b, "");
}

bool rooted_isomorphic(const ShiftedTree& a, const ShiftedTree& b) {
    return rooted_isomorphic(a.sub, b.sub);
}

std::vector<BranchTree> enumerate_trees(int max_depth) {
    // Subtree shapes below a vertex with the given remaining depth,
    // encoded as relative vertex lists.
    std::vector<std::vector<std::vector<std::string>>> shapes(max_depth + 1);
    shapes[0] = {{""}};
    for (int d = 1; d <= max_depth; ++d) {
        std::vector<std::vector<std::string>>& out = shapes[d];
        const auto& sub = shapes[d - 1];
        out.push_back({""});  // no children
        for (char b : {'0', '1'})
            for (const auto& s : sub) {
                std::vector<std::string> t{""};
                for (const auto& v : s) t.push_back(std::string(1, b) + v);
                out.push_back(std::move(t));
            }
        for (const auto& l : sub)
            for (const auto& r : sub) {
                std::vector<std::string> t{""};
                for (const auto& v : l) t.push_back("0" + v);
                for (const auto& v : r) t.push_back("1" + v);
                out.push_back(std::move(t));
            }
    }
    std::vector<BranchTree> res;
    res.push_back(BranchTree{});
    for (auto& s : shapes[max_depth]) res.push_back(make_tree(std::move(s)));
    std::sort(res.begin(), res.end());
    return res;
}

void for_each_attr_tree(int max_depth, const std::vector<json>& tokens,
                        const std::function<void(const BranchTree&)>& fn) {
    fn(BranchTree{});
    for (const auto& t : enumerate_trees(max_depth)) {
        if (t.empty()) continue;
        const size_t n = t.verts.size();
        std::vector<size_t> pick(n, 0);
        BranchTree at = t;
        while (true) {
            for (size_t i = 0; i < n; ++i) at.attrs[t.verts[i]] = tokens[pick[i]];
            fn(at);
            size_t pos = 0;
            while (pos < n && ++pick[pos] == tokens.size()) pick[pos++] = 0;
            if (pos == n) break;
        }
    }
}

std::vector<BranchTree> enumerate_attr_trees(int max_depth, const std::vector<json>& tokens) {
    std::vector<BranchTree> out;
    for_each_attr_tree(max_depth, tokens, [&](const BranchTree& t) { out.push_back(t); });
    std::sort(out.begin(), out.end());
    return out;
}

void GWModel::validate() const {
    if (!(root_prob >= 0.0 && root_prob <= 1.0)) throw std::invalid_argument("root probability outside [0,1]");
    double total = mu[0] + mu[1] + mu[2];
    if (std::fabs(total - 1.0) > 1e-12) throw std::invalid_argument("offspring law does not sum to 1");
    for (double p : mu)
        if (p < 0) throw std::invalid_argument("negative offspring probability");
    if (max_depth < 0) throw std::invalid_argument("negative depth cap");
}

double gw_log_prob(const GWModel& m, const BranchTree& t) {
    m.validate();
    if (t.empty()) return m.root_prob == 1.0 ? kNegInfT : std::log1p(-m.root_prob);
    if (t.depth() > m.max_depth) throw std::invalid_argument("tree exceeds the depth cap");
    double lp = m.root_prob == 0.0 ? kNegInfT : std::log(m.root_prob);
    for (const auto& v : t.verts) {
        if (static_cast<int>(v.size()) >= m.max_depth) continue;  // forced leaf, no factor
        size_t c = t.children(v).size();
        double f = m.mu[c];
        if (c == 1) f *= 0.5;  // two placements of a single child share mu(1)
        lp += f == 0.0 ? kNegInfT : std::log(f);
    }
    return lp;
}

BranchTree gw_sample(const GWModel& m, Rng& rng) {
    m.validate();
    BranchTree t;
    if (rng.next_unit() >= m.root_prob) return t;
    std::vector<std::string> frontier{""};
    t.verts.push_back("");
    while (!frontier.empty()) {
        std::string v = frontier.back();
        frontier.pop_back();
        if (static_cast<int>(v.size()) >= m.max_depth) continue;
        double u = rng.next_unit();
        std::vector<std::string> kids;
        if (u < m.mu[0]) {
        } else if (u < m.mu[0] + m.mu[1]) {
            kids.push_back(v + (rng.next_unit() < 0.5 ? '0' : '1'));
        } else {
            kids.push_back(v + '0');
            kids.push_back(v + '1');
        }
        for (auto& k : kids) {
            t.verts.push_back(k);
            frontier.push_back(k);
        }
    }
    std::sort(t.verts.begin(), t.verts.end(), tree_vertex_less);
    return t;
}

void PcfgModel::validate() const {
    if (!(root_prob >= 0.0 && root_prob <= 1.0)) throw std::invalid_argument("root probability outside [0,1]");
    for (const auto& a : leaf_attrs)
        for (const auto& b : nonleaf_attrs)
            if (a == b) throw std::invalid_argument("leaf and non-leaf attribute sets overlap");
    double rt = 0.0;
    for (const auto& [a, p] : root_attr) {
        if (p < 0) throw std::invalid_argument("negative root attribute probability");
        rt += p;
    }
    if (std::fabs(rt - 1.0) > 1e-12) throw std::invalid_argument("root attribute law does not sum to 1");
    for (const auto& [key, rs] : rules) {
        double total = 0.0;
        for (const auto& r : rs) {
            if (r.prob < 0) throw std::invalid_argument("negative rule probability");
            total += r.prob;
        }
        if (std::fabs(total - 1.0) > 1e-12)
            throw std::invalid_argument("rule law for attribute " + key + " does not sum to 1");
    }
}

bool PcfgModel::is_leaf_attr(const json& a) const {
    for (const auto& t : leaf_attrs)
        if (t == a) return true;
    return false;
}

std::vector<json> PcfgModel::all_attrs() const {
    std::vector<json> out = leaf_attrs;
    out.insert(out.end(), nonleaf_attrs.begin(), nonleaf_attrs.end());
    return out;
}

double pcfg_log_prob(const PcfgModel& m, const BranchTree& t) {
    m.validate();
    if (t.empty()) return m.root_prob == 1.0 ? kNegInfT : std::log1p(-m.root_prob);
    if (t.attrs.empty()) throw std::invalid_argument("PCFG law requires an attributed tree");
    if (t.depth() > m.max_depth) throw std::invalid_argument("tree exceeds the depth cap");

    double lp = m.root_prob == 0.0 ? kNegInfT : std::log(m.root_prob);
    {
        const json& ra = t.attrs.at("");
        double p = 0.0;
        for (const auto& [a, pa] : m.root_attr)
            if (a == ra) p = pa;
        lp += p == 0.0 ? kNegInfT : std::log(p);
    }
    for (const auto& v : t.verts) {
        const json& av = t.attrs.at(v);
        auto kids = t.children(v);
        if (m.is_leaf_attr(av)) {
            if (!kids.empty())
                throw std::invalid_argument("leaf-attributed vertex has children at " + v);
            continue;
        }
        if (static_cast<int>(v.size()) >= m.max_depth) continue;  // forced leaf at the cap
        auto rit = m.rules.find(av.dump());
        double p = 0.0;
        if (rit != m.rules.end()) {
            for (const auto& r : rit->second) {
                if (r.children.size() != kids.size()) continue;
                bool match = true;
                for (const auto& [branch, attr] : r.children) {
                    std::string kid = v + static_cast<char>('0' + branch);
                    if (!t.contains(kid) || t.attrs.at(kid) != attr) {
                        match = false;
                        break;
                    }
                }
                if (match) {
                    p = r.prob;
                    break;
                }
            }
        }
        lp += p == 0.0 ? kNegInfT : std::log(p);
    }
    return lp;
}

BranchTree pcfg_sample(const PcfgModel& m, Rng& rng) {
    m.validate();
    BranchTree t;
    if (rng.next_unit() >= m.root_prob) return t;
    t.verts.push_back("");
    {
        double u = rng.next_unit(), acc = 0.0;
        json picked = m.root_attr.back().first;
        for (const auto& [a, p] : m.root_attr) {
            acc += p;
            if (u < acc) {
                picked = a;
                break;
            }
        }
        t.attrs[""] = picked;
    }
    std::vector<std::string> frontier{""};
    while (!frontier.empty()) {
        std::string v = frontier.back();
        frontier.pop_back();
        const json& av = t.attrs[v];
        if (m.is_leaf_attr(av)) continue;
        if (static_cast<int>(v.size()) >= m.max_depth) continue;
        auto rit = m.rules.find(av.dump());
        if (rit == m.rules.end()) continue;
        double u = rng.next_unit(), acc = 0.0;
        const PcfgRule* picked = &rit->second.back();
        for (const auto& r : rit->second) {
            acc += r.prob;
            if (u < acc) {
                picked = &r;
                break;
            }
        }
        for (const auto& [branch, attr] : picked->children) {
            std::string kid = v + static_cast<char>('0' + branch);
            t.verts.push_back(kid);
            t.attrs[kid] = attr;
            frontier.push_back(kid);
        }
    }
    std::sort(t.verts.begin(), t.verts.end(), tree_vertex_less);
    return t;
}

MergeCheck validate_merge_tree(const MergeTree& t) {
    MergeCheck res;
    if (t.verts.empty()) return res;

    std::set<std::vector<int>> vset;
    for (auto v : t.verts) {
        std::sort(v.begin(), v.end());
        vset.insert(std::move(v));
    }

    // Condition 1: a unique vertex of strictly maximal cardinality.
    size_t maxc = 0;
    for (const auto& v : vset) maxc = std::max(maxc, v.size());
    int n_max = 0;
    for (const auto& v : vset)
        if (v.size() == maxc) ++n_max;
    if (n_max != 1) {
        res.ok = false;
        res.witness = "condition 1: no unique maximal root";
        return res;
    }
    // Condition 2: cardinalities are powers of two.
    for (const auto& v : vset) {
        size_t c = v.size();
        if (c == 0 || (c & (c - 1)) != 0) {
            res.ok = false;
            res.witness = "condition 2: vertex cardinality " + std::to_string(c) + " is not a power of 2";
            return res;
        }
    }
    // Condition 3: every non-leaf vertex splits into two present halves.
    for (const auto& v : vset) {
        if (v.size() == 1) continue;
        bool found = false;
        // Enumerate subsets of half size containing the smallest element
        // (fixing it kills the {v',v''} symmetry).
        const size_t half = v.size() / 2;
        std::vector<int> pick;
        auto rec = [&](auto&& self, size_t idx) -> void {
            if (found) return;
            if (pick.size() == half) {
                std::vector<int> rest;
                for (int x : v)
                    if (!std::binary_search(pick.begin(), pick.end(), x)) rest.push_back(x);
                if (vset.count(pick) && vset.count(rest)) found = true;
                return;
            }
            if (idx >= v.size()) return;
            pick.push_back(v[idx]);
            self(self, idx + 1);
            pick.pop_back();
            if (pick.size() + (v.size() - idx - 1) >= half) self(self, idx + 1);
        };
        pick.push_back(v[0]);
        rec(rec, 1);
        if (!found) {
            res.ok = false;
            res.witness = "condition 3: no binary partition of a vertex of size " + std::to_string(v.size());
            return res;
        }
    }
    return res;
}

ordered_json tree_to_json(const BranchTree& t) {
    ordered_json o;
    o["vertices"] = t.verts;
    if (!t.attrs.empty()) o["attrs"] = t.attrs;
    return o;
}

BranchTree tree_from_json(const json& j, int max_depth) {
    std::vector<std::string> verts;
    for (const auto& v : j.at("vertices")) verts.push_back(v.get<std::string>());
    std::map<std::string, json> attrs;
    if (j.contains("attrs"))
        for (const auto& [k, v] : j["attrs"].items()) attrs[k] = v;
    return make_tree(std::move(verts), std::move(attrs), max_depth);
}

ordered_json merge_tree_to_json(const MergeTree& t) {
    ordered_json o;
    o["vertices"] = t.verts;
    return o;
}

MergeTree merge_tree_from_json(const json& j) {
    MergeTree t;
    for (const auto& v : j.at("vertices")) t.verts.push_back(v.get<std::vector<int>>());
    return t;
}

}  // namespace gmrg
