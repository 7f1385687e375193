#include "stripmis/matching.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>

namespace stripmis {

EdgeWeightedGraph::EdgeWeightedGraph(std::int32_t n, std::vector<WeightedEdge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("negative vertex count");
    std::set<std::pair<std::int32_t, std::int32_t>> seen;
    for (const auto& e : edges_) {
        if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_) throw std::invalid_argument("edge end out of range");
        if (e.u == e.v) throw std::invalid_argument("loop at vertex " + std::to_string(e.u));
        if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) {
            throw std::invalid_argument("parallel edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
        }
    }
}

bool is_matching(const EdgeWeightedGraph& g, const std::vector<std::size_t>& edge_ids) {
    std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
    std::set<std::size_t> ids;
    for (std::size_t id : edge_ids) {
        if (id >= g.edge_count() || !ids.insert(id).second) return false;
        const auto& e = g.edge(id);
        if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) return false;
        used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
    }
    return true;
}

namespace {

/// Edmonds' primal-dual blossom algorithm for maximum-weight matching,
/// O(n^3). Follows Galil's presentation with the bookkeeping of Van
/// Rantwijk's reference implementation: vertices are 0..n-1, blossoms
/// n..2n-1, and edge k has endpoints 2k (its first end) and 2k+1.
class Blossom {
public:
    Blossom(int n, const std::vector<std::array<std::int64_t, 3>>& edges) : n_(n), edges_(edges) {
        const int m = static_cast<int>(edges_.size());
        std::int64_t maxweight = 0;
        for (const auto& e : edges_) maxweight = std::max(maxweight, e[2]);
        endpoint_.resize(static_cast<std::size_t>(2 * m));
        for (int p = 0; p < 2 * m; ++p) endpoint_[idx(p)] = static_cast<int>(edges_[idx(p / 2)][idx(p % 2)]);
        neighbend_.resize(idx(n));
        for (int k = 0; k < m; ++k) {
            neighbend_[idx(static_cast<int>(edges_[idx(k)][0]))].push_back(2 * k + 1);
            neighbend_[idx(static_cast<int>(edges_[idx(k)][1]))].push_back(2 * k);
        }
        mate_.assign(idx(n), -1);
        label_.assign(idx(2 * n), 0);
        labelend_.assign(idx(2 * n), -1);
        inblossom_.resize(idx(n));
        for (int v = 0; v < n; ++v) inblossom_[idx(v)] = v;
        blossomparent_.assign(idx(2 * n), -1);
        blossomchilds_.assign(idx(2 * n), {});
        blossombase_.assign(idx(2 * n), -1);
        for (int v = 0; v < n; ++v) blossombase_[idx(v)] = v;
        blossomendps_.assign(idx(2 * n), {});
        bestedge_.assign(idx(2 * n), -1);
        blossombestedges_.assign(idx(2 * n), std::nullopt);
        for (int b = n; b < 2 * n; ++b) unusedblossoms_.push_back(b);
        dualvar_.assign(idx(2 * n), 0);
        for (int v = 0; v < n; ++v) dualvar_[idx(v)] = maxweight;
        allowedge_.assign(idx(m), 0);
    }

    /// mate[v] = matched partner or -1.
    std::vector<int> run() {
        if (edges_.empty()) return std::vector<int>(idx(n_), -1);
        for (int stage = 0; stage < n_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; ++b) blossombestedges_[idx(b)].reset();
            std::fill(allowedge_.begin(), allowedge_.end(), 0);
            queue_.clear();
            for (int v = 0; v < n_; ++v) {
                if (mate_[idx(v)] == -1 && label_[idx(inblossom_[idx(v)])] == 0) assign_label(v, 1, -1);
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[idx(v)]) {
                        int k = p / 2;
                        int w = endpoint_[idx(p)];
                        if (inblossom_[idx(v)] == inblossom_[idx(w)]) continue;
                        std::int64_t kslack = 0;
                        if (!allowedge_[idx(k)]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[idx(k)] = 1;
                        }
                        if (allowedge_[idx(k)]) {
                            if (label_[idx(inblossom_[idx(w)])] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[idx(inblossom_[idx(w)])] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[idx(w)] == 0) {
                                label_[idx(w)] = 2;
                                labelend_[idx(w)] = p ^ 1;
                            }
                        } else if (label_[idx(inblossom_[idx(w)])] == 1) {
                            int b = inblossom_[idx(v)];
                            if (bestedge_[idx(b)] == -1 || kslack < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = k;
                        } else if (label_[idx(w)] == 0) {
                            if (bestedge_[idx(w)] == -1 || kslack < slack(bestedge_[idx(w)])) bestedge_[idx(w)] = k;
                        }
                    }
                }
                if (augmented) break;

                int deltatype = 1;
                std::int64_t delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
                int deltaedge = -1;
                int deltablossom = -1;
                for (int v = 0; v < n_; ++v) {
                    if (label_[idx(inblossom_[idx(v)])] == 0 && bestedge_[idx(v)] != -1) {
                        std::int64_t d = slack(bestedge_[idx(v)]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[idx(v)];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; ++b) {
                    if (blossomparent_[idx(b)] == -1 && label_[idx(b)] == 1 && bestedge_[idx(b)] != -1) {
                        std::int64_t d = slack(bestedge_[idx(b)]) / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[idx(b)];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1 && label_[idx(b)] == 2 &&
                        dualvar_[idx(b)] < delta) {
                        delta = dualvar_[idx(b)];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }

                for (int v = 0; v < n_; ++v) {
                    int l = label_[idx(inblossom_[idx(v)])];
                    if (l == 1) {
                        dualvar_[idx(v)] -= delta;
                    } else if (l == 2) {
                        dualvar_[idx(v)] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; ++b) {
                    if (blossombase_[idx(b)] >= 0 && blossomparent_[idx(b)] == -1) {
                        if (label_[idx(b)] == 1) {
                            dualvar_[idx(b)] += delta;
                        } else if (label_[idx(b)] == 2) {
                            dualvar_[idx(b)] -= delta;
                        }
                    }
                }

                if (deltatype == 1) break;
                if (deltatype == 2) {
                    allowedge_[idx(deltaedge)] = 1;
                    int i = end_of(deltaedge, 0);
                    int j = end_of(deltaedge, 1);
                    if (label_[idx(inblossom_[idx(i)])] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[idx(deltaedge)] = 1;
                    queue_.push_back(end_of(deltaedge, 0));
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = n_; b < 2 * n_; ++b) {
                if (blossomparent_[idx(b)] == -1 && blossombase_[idx(b)] >= 0 && label_[idx(b)] == 1 &&
                    dualvar_[idx(b)] == 0) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int> out(idx(n_), -1);
        for (int v = 0; v < n_; ++v) {
            if (mate_[idx(v)] >= 0) out[idx(v)] = endpoint_[idx(mate_[idx(v)])];
        }
        return out;
    }

private:
    static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

    /// Index into a cyclic list, allowing negative positions.
    static int& cyc(std::vector<int>& list, int j) {
        int n = static_cast<int>(list.size());
        return list[idx(((j % n) + n) % n)];
    }

    int end_of(int k, int side) const { return static_cast<int>(edges_[idx(k)][idx(side)]); }

    std::int64_t slack(int k) const {
        const auto& e = edges_[idx(k)];
        return dualvar_[idx(static_cast<int>(e[0]))] + dualvar_[idx(static_cast<int>(e[1]))] - 2 * e[2];
    }

    void leaves(int b, std::vector<int>& out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[idx(b)]) leaves(t, out);
    }

    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[idx(w)];
        label_[idx(w)] = label_[idx(b)] = t;
        labelend_[idx(w)] = labelend_[idx(b)] = p;
        bestedge_[idx(w)] = bestedge_[idx(b)] = -1;
        if (t == 1) {
            leaves(b, queue_);
        } else if (t == 2) {
            int base = blossombase_[idx(b)];
            assign_label(endpoint_[idx(mate_[idx(base)])], 1, mate_[idx(base)] ^ 1);
        }
    }

    /// Traces back from v and w to find a new blossom base, or -1 when the
    /// two alternating paths end at different exposed vertices.
    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[idx(v)];
            if (label_[idx(b)] & 4) {
                base = blossombase_[idx(b)];
                break;
            }
            path.push_back(b);
            label_[idx(b)] = 5;
            if (labelend_[idx(b)] == -1) {
                v = -1;
            } else {
                v = endpoint_[idx(labelend_[idx(b)])];
                b = inblossom_[idx(v)];
                v = endpoint_[idx(labelend_[idx(b)])];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[idx(b)] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = end_of(k, 0);
        int w = end_of(k, 1);
        int bb = inblossom_[idx(base)];
        int bv = inblossom_[idx(v)];
        int bw = inblossom_[idx(w)];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[idx(b)] = base;
        blossomparent_[idx(b)] = -1;
        blossomparent_[idx(bb)] = b;
        std::vector<int> path;
        std::vector<int> endps;
        while (bv != bb) {
            blossomparent_[idx(bv)] = b;
            path.push_back(bv);
            endps.push_back(labelend_[idx(bv)]);
            v = endpoint_[idx(labelend_[idx(bv)])];
            bv = inblossom_[idx(v)];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[idx(bw)] = b;
            path.push_back(bw);
            endps.push_back(labelend_[idx(bw)] ^ 1);
            w = endpoint_[idx(labelend_[idx(bw)])];
            bw = inblossom_[idx(w)];
        }
        blossomchilds_[idx(b)] = path;
        blossomendps_[idx(b)] = endps;
        label_[idx(b)] = 1;
        labelend_[idx(b)] = labelend_[idx(bb)];
        dualvar_[idx(b)] = 0;
        for (int leaf : leaves(b)) {
            if (label_[idx(inblossom_[idx(leaf)])] == 2) queue_.push_back(leaf);
            inblossom_[idx(leaf)] = b;
        }

        std::vector<int> bestedgeto(idx(2 * n_), -1);
        for (int sub : path) {
            std::vector<std::vector<int>> nblists;
            if (!blossombestedges_[idx(sub)]) {
                for (int leaf : leaves(sub)) {
                    std::vector<int> list;
                    for (int p : neighbend_[idx(leaf)]) list.push_back(p / 2);
                    nblists.push_back(std::move(list));
                }
            } else {
                nblists.push_back(*blossombestedges_[idx(sub)]);
            }
            for (const auto& nblist : nblists) {
                for (int kk : nblist) {
                    int i = end_of(kk, 0);
                    int j = end_of(kk, 1);
                    if (inblossom_[idx(j)] == b) std::swap(i, j);
                    int bj = inblossom_[idx(j)];
                    if (bj != b && label_[idx(bj)] == 1 &&
                        (bestedgeto[idx(bj)] == -1 || slack(kk) < slack(bestedgeto[idx(bj)]))) {
                        bestedgeto[idx(bj)] = kk;
                    }
                }
            }
            blossombestedges_[idx(sub)].reset();
            bestedge_[idx(sub)] = -1;
        }
        std::vector<int> best;
        for (int kk : bestedgeto) {
            if (kk != -1) best.push_back(kk);
        }
        bestedge_[idx(b)] = -1;
        for (int kk : best) {
            if (bestedge_[idx(b)] == -1 || slack(kk) < slack(bestedge_[idx(b)])) bestedge_[idx(b)] = kk;
        }
        blossombestedges_[idx(b)] = std::move(best);
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[idx(b)]) {
            blossomparent_[idx(s)] = -1;
            if (s < n_) {
                inblossom_[idx(s)] = s;
            } else if (endstage && dualvar_[idx(s)] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int leaf : leaves(s)) inblossom_[idx(leaf)] = s;
            }
        }
        if (!endstage && label_[idx(b)] == 2) {
            auto& childs = blossomchilds_[idx(b)];
            auto& endps = blossomendps_[idx(b)];
            int entrychild = inblossom_[idx(endpoint_[idx(labelend_[idx(b)] ^ 1)])];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep = 0;
            int endptrick = 0;
            if (j & 1) {
                j -= static_cast<int>(childs.size());
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[idx(b)];
            while (j != 0) {
                label_[idx(endpoint_[idx(p ^ 1)])] = 0;
                label_[idx(endpoint_[idx(cyc(endps, j - endptrick) ^ endptrick ^ 1)])] = 0;
                assign_label(endpoint_[idx(p ^ 1)], 2, p);
                allowedge_[idx(cyc(endps, j - endptrick) / 2)] = 1;
                j += jstep;
                p = cyc(endps, j - endptrick) ^ endptrick;
                allowedge_[idx(p / 2)] = 1;
                j += jstep;
            }
            int bv = cyc(childs, j);
            label_[idx(endpoint_[idx(p ^ 1)])] = label_[idx(bv)] = 2;
            labelend_[idx(endpoint_[idx(p ^ 1)])] = labelend_[idx(bv)] = p;
            bestedge_[idx(bv)] = -1;
            j += jstep;
            while (cyc(childs, j) != entrychild) {
                bv = cyc(childs, j);
                if (label_[idx(bv)] == 1) {
                    j += jstep;
                    continue;
                }
                int v = -1;
                for (int leaf : leaves(bv)) {
                    v = leaf;
                    if (label_[idx(leaf)] != 0) break;
                }
                if (label_[idx(v)] != 0) {
                    label_[idx(v)] = 0;
                    label_[idx(endpoint_[idx(mate_[idx(blossombase_[idx(bv)])])])] = 0;
                    assign_label(v, 2, labelend_[idx(v)]);
                }
                j += jstep;
            }
        }
        label_[idx(b)] = labelend_[idx(b)] = -1;
        blossomchilds_[idx(b)].clear();
        blossomendps_[idx(b)].clear();
        blossombase_[idx(b)] = -1;
        blossombestedges_[idx(b)].reset();
        bestedge_[idx(b)] = -1;
        unusedblossoms_.push_back(b);
    }

    /// Swaps matched and unmatched edges along the even path from v to the
    /// base of blossom b, then rotates b so that v becomes its base.
    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[idx(t)] != b) t = blossomparent_[idx(t)];
        if (t >= n_) augment_blossom(t, v);
        auto& childs = blossomchilds_[idx(b)];
        auto& endps = blossomendps_[idx(b)];
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i;
        int jstep = 0;
        int endptrick = 0;
        if (i & 1) {
            j -= static_cast<int>(childs.size());
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = cyc(childs, j);
            int p = cyc(endps, j - endptrick) ^ endptrick;
            if (t >= n_) augment_blossom(t, endpoint_[idx(p)]);
            j += jstep;
            t = cyc(childs, j);
            if (t >= n_) augment_blossom(t, endpoint_[idx(p ^ 1)]);
            mate_[idx(endpoint_[idx(p)])] = p ^ 1;
            mate_[idx(endpoint_[idx(p ^ 1)])] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[idx(b)] = blossombase_[idx(childs.front())];
    }

    void augment_matching(int k) {
        for (auto [s, p] : {std::pair{end_of(k, 0), 2 * k + 1}, std::pair{end_of(k, 1), 2 * k}}) {
            while (true) {
                int bs = inblossom_[idx(s)];
                if (bs >= n_) augment_blossom(bs, s);
                mate_[idx(s)] = p;
                if (labelend_[idx(bs)] == -1) break;
                int t = endpoint_[idx(labelend_[idx(bs)])];
                int bt = inblossom_[idx(t)];
                s = endpoint_[idx(labelend_[idx(bt)])];
                int j = endpoint_[idx(labelend_[idx(bt)] ^ 1)];
                if (bt >= n_) augment_blossom(bt, j);
                mate_[idx(j)] = labelend_[idx(bt)];
                p = labelend_[idx(bt)] ^ 1;
            }
        }
    }

    int n_;
    const std::vector<std::array<std::int64_t, 3>>& edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::optional<std::vector<int>>> blossombestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<std::int64_t> dualvar_;
    std::vector<char> allowedge_;
    std::vector<int> queue_;
};

/// Optimum over the positive edges whose ends are both free. Weights are
/// doubled so every dual stays integral.
Matching solve_restricted(const EdgeWeightedGraph& g, const std::vector<char>& blocked) {
    std::vector<std::array<std::int64_t, 3>> edges;
    std::vector<std::size_t> ids;
    for (std::size_t id = 0; id < g.edge_count(); ++id) {
        const auto& e = g.edge(id);
        if (e.weight <= 0 || blocked[static_cast<std::size_t>(e.u)] || blocked[static_cast<std::size_t>(e.v)]) continue;
        edges.push_back({e.u, e.v, 2 * e.weight});
        ids.push_back(id);
    }
    Matching m;
    if (edges.empty()) return m;
    auto mate = Blossom(g.size(), edges).run();
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto u = static_cast<std::size_t>(edges[k][0]);
        if (mate[u] == static_cast<int>(edges[k][1])) {
            m.edges.push_back(ids[k]);
            m.weight += g.edge(ids[k]).weight;
        }
    }
    return m;
}

}  // namespace

Matching any_max_weight_matching(const EdgeWeightedGraph& g) {
    return solve_restricted(g, std::vector<char>(static_cast<std::size_t>(g.size()), 0));
}

Matching max_weight_matching(const EdgeWeightedGraph& g) {
    std::vector<char> blocked(static_cast<std::size_t>(g.size()), 0);
    const std::int64_t best = solve_restricted(g, blocked).weight;

    // Fix edges greedily in id order: an edge joins the answer iff some
    // optimum contains it together with every edge already fixed.
    Matching out;
    for (std::size_t id = 0; id < g.edge_count() && out.weight < best; ++id) {
        const auto& e = g.edge(id);
        if (e.weight <= 0 || blocked[static_cast<std::size_t>(e.u)] || blocked[static_cast<std::size_t>(e.v)]) continue;
        blocked[static_cast<std::size_t>(e.u)] = blocked[static_cast<std::size_t>(e.v)] = 1;
        if (out.weight + e.weight + solve_restricted(g, blocked).weight == best) {
            out.edges.push_back(id);
            out.weight += e.weight;
        } else {
            blocked[static_cast<std::size_t>(e.u)] = blocked[static_cast<std::size_t>(e.v)] = 0;
        }
    }
    return out;
}

Matching brute_force_matching(const EdgeWeightedGraph& g) {
    const std::size_t m = g.edge_count();
    if (m > kBruteForceMatchingEdgeCap) {
        throw MatchingCapExceeded("brute-force matching enumerates 2^|E| subsets; |E| = " + std::to_string(m) +
                                  " exceeds " + std::to_string(kBruteForceMatchingEdgeCap));
    }
    Matching best;
    bool have = false;
    std::vector<char> used(static_cast<std::size_t>(g.size()), 0);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::fill(used.begin(), used.end(), 0);
        std::vector<std::size_t> ids;
        std::int64_t weight = 0;
        bool ok = true;
        for (std::size_t id = 0; id < m && ok; ++id) {
            if (!(mask >> id & 1)) continue;
            const auto& e = g.edge(id);
            if (e.weight <= 0 || used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) {
                ok = false;
                break;
            }
            used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
            ids.push_back(id);
            weight += e.weight;
        }
        if (!ok) continue;
        if (!have || weight > best.weight || (weight == best.weight && ids < best.edges)) {
            best.edges = std::move(ids);
            best.weight = weight;
            have = true;
        }
    }
    return best;
}

}  // namespace stripmis
