#include "stripmis/pattern.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace stripmis {

VertexSet ClawEmbedding::vertices() const {
    VertexSet out{root};
    for (const auto& leg : legs) out.insert(out.end(), leg.begin(), leg.end());
    return canonical(std::move(out));
}

bool is_valid_claw(const Graph& g, const ClawEmbedding& claw) {
    VertexSet all = claw.vertices();
    std::size_t expected = 1;
    for (const auto& leg : claw.legs) expected += leg.size();
    if (all.size() != expected) return false;

    int nonempty = 0;
    for (const auto& leg : claw.legs) nonempty += leg.empty() ? 0 : 1;
    if (nonempty < 2) return false;

    // Build the intended edge set and compare with the induced one.
    std::set<Edge> want;
    auto add = [&](Vertex x, Vertex y) { want.insert({std::min(x, y), std::max(x, y)}); };
    for (const auto& leg : claw.legs) {
        Vertex prev = claw.root;
        for (Vertex x : leg) {
            add(prev, x);
            prev = x;
        }
    }
    std::set<Edge> have;
    for (Vertex x : all) {
        for (Vertex y : g.neighbors(x)) {
            if (x < y && contains(all, y)) have.insert({x, y});
        }
    }
    return want == have;
}

namespace {

/// Backtracking search for three induced legs at a fixed root. Each new leg
/// vertex must be adjacent to its predecessor and to no other chosen vertex.
class LegSearch {
public:
    LegSearch(const Graph& g, Vertex root, std::array<int, 3> lengths)
        : g_(g), root_(root), lengths_(lengths), used_(static_cast<std::size_t>(g.size()), 0) {
        used_[static_cast<std::size_t>(root)] = 1;
    }

    template <class Visit>
    void run(Visit&& visit) {
        extend(0, std::forward<Visit>(visit));
    }

    bool stopped() const { return stop_; }

private:
    bool compatible(Vertex x, Vertex prev) const {
        for (Vertex y : g_.neighbors(x)) {
            if (used_[static_cast<std::size_t>(y)] && y != prev) return false;
        }
        return true;
    }

    template <class Visit>
    void extend(int leg, Visit&& visit) {
        if (stop_) return;
        if (leg == 3) {
            ClawEmbedding claw;
            claw.root = root_;
            claw.legs = legs_;
            if (!visit(claw)) stop_ = true;
            return;
        }
        auto& current = legs_[static_cast<std::size_t>(leg)];
        if (static_cast<int>(current.size()) == lengths_[static_cast<std::size_t>(leg)]) {
            extend(leg + 1, visit);
            return;
        }
        Vertex prev = current.empty() ? root_ : current.back();
        for (Vertex x : g_.neighbors(prev)) {
            if (used_[static_cast<std::size_t>(x)] || !compatible(x, prev)) continue;
            used_[static_cast<std::size_t>(x)] = 1;
            current.push_back(x);
            extend(leg, visit);
            current.pop_back();
            used_[static_cast<std::size_t>(x)] = 0;
            if (stop_) return;
        }
    }

    const Graph& g_;
    Vertex root_;
    std::array<int, 3> lengths_;
    std::vector<char> used_;
    std::array<std::vector<Vertex>, 3> legs_;
    bool stop_ = false;
};

}  // namespace

std::optional<ClawEmbedding> find_induced_subdivided_claw(const Graph& g, int a, int b, int c) {
    if (a < 0 || b < 1 || c < 1) throw std::invalid_argument("claw legs need a >= 0 and b, c >= 1");
    for (Vertex root = 0; root < g.size(); ++root) {
        std::optional<ClawEmbedding> found;
        LegSearch search(g, root, {a, b, c});
        search.run([&](const ClawEmbedding& claw) {
            found = claw;
            return false;
        });
        if (found) return found;
    }
    return std::nullopt;
}

bool is_sttt_free(const Graph& g, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    return !find_induced_subdivided_claw(g, t, t, t).has_value();
}

std::vector<ClawEmbedding> enumerate_rooted_claws(const Graph& g, Vertex v, int t) {
    if (t < 1) throw std::invalid_argument("t must be at least 1");
    std::set<std::array<std::vector<Vertex>, 3>> seen;
    std::vector<ClawEmbedding> out;
    for (int a = 1; a <= t; ++a) {
        for (int b = a; b <= t; ++b) {
            for (int c = b; c <= t; ++c) {
                LegSearch search(g, v, {a, b, c});
                search.run([&](const ClawEmbedding& claw) {
                    auto legs = claw.legs;
                    std::sort(legs.begin(), legs.end());
                    if (seen.insert(legs).second) {
                        ClawEmbedding canon;
                        canon.root = v;
                        canon.legs = legs;
                        out.push_back(std::move(canon));
                    }
                    return true;
                });
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.legs < y.legs; });
    return out;
}

std::optional<InducedTree> find_induced_tree_containing(const Graph& g, const VertexSet& z, Vertex cap) {
    if (z.size() < 2) throw std::invalid_argument("terminal set needs at least two vertices");
    if (g.size() > cap || g.size() > 63) {
        throw SizeCapExceeded("induced-tree search is exhaustive; graph has " + std::to_string(g.size()) +
                              " vertices, cap is " + std::to_string(std::min<Vertex>(cap, 63)));
    }
    const int n = g.size();
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        for (Vertex u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
    }
    std::uint64_t zmask = 0;
    for (Vertex v : z) {
        if (v < 0 || v >= n) throw GraphError("terminal out of range");
        zmask |= std::uint64_t{1} << v;
    }
    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v) {
        if (!(zmask >> v & 1)) others.push_back(v);
    }

    auto is_tree = [&](std::uint64_t mask) {
        int size = std::popcount(mask);
        int twice_edges = 0;
        for (std::uint64_t m = mask; m; m &= m - 1) {
            twice_edges += std::popcount(adj[static_cast<std::size_t>(std::countr_zero(m))] & mask);
        }
        if (twice_edges != 2 * (size - 1)) return false;
        std::uint64_t reached = mask & (~mask + 1);
        std::uint64_t frontier = reached;
        while (frontier) {
            std::uint64_t next = 0;
            for (std::uint64_t m = frontier; m; m &= m - 1) {
                next |= adj[static_cast<std::size_t>(std::countr_zero(m))];
            }
            next &= mask & ~reached;
            reached |= next;
            frontier = next;
        }
        return reached == mask;
    };

    // Subsets of the non-terminals in order of size, each size in
    // lexicographic order of the sorted vertex list.
    const int k_max = static_cast<int>(others.size());
    std::vector<int> pick;
    for (int k = 0; k <= k_max; ++k) {
        pick.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::uint64_t mask = zmask;
            for (int i : pick) mask |= std::uint64_t{1} << others[static_cast<std::size_t>(i)];
            if (is_tree(mask)) {
                InducedTree tree;
                for (Vertex v = 0; v < n; ++v) {
                    if (mask >> v & 1) tree.vertices.push_back(v);
                }
                // BFS from the first terminal to orient the tree.
                std::vector<Vertex> par(static_cast<std::size_t>(n), -2);
                std::vector<Vertex> queue{z.front()};
                par[static_cast<std::size_t>(z.front())] = -1;
                for (std::size_t h = 0; h < queue.size(); ++h) {
                    Vertex v = queue[h];
                    for (Vertex u : g.neighbors(v)) {
                        if ((mask >> u & 1) && par[static_cast<std::size_t>(u)] == -2) {
                            par[static_cast<std::size_t>(u)] = v;
                            queue.push_back(u);
                        }
                    }
                }
                for (Vertex v : tree.vertices) tree.parent.push_back(par[static_cast<std::size_t>(v)]);
                return tree;
            }
            int i = k - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == k_max - k + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace stripmis
