// Copyright 2026 surflab contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SURFLAB_MATCHING_H
#define SURFLAB_MATCHING_H

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surflab {

/// Weighted graph instance for perfect matching. Weights are non-negative
/// integers (callers encode log-likelihood ratios as fixed-point integers so
/// comparisons are exact).
struct MatchingProblem {
    int n_nodes = 0;

    struct WeightedEdge {
        uint32_t u = 0;
        uint32_t v = 0;
        int64_t weight = 0;
    };
    std::vector<WeightedEdge> edges;

    void add_edge(uint32_t u, uint32_t v, int64_t weight) {
        if (u == v) {
            throw std::invalid_argument("matching edge endpoints must differ");
        }
        if (u >= static_cast<uint32_t>(n_nodes) || v >= static_cast<uint32_t>(n_nodes)) {
            throw std::invalid_argument("matching edge endpoint out of range");
        }
        if (weight < 0) {
            throw std::invalid_argument("matching edge weights must be non-negative");
        }
        edges.push_back({u, v, weight});
    }
};

struct Matching {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;  // u < v, sorted by u
    int64_t total_weight = 0;
};

class MatchingInfeasibleError : public std::runtime_error {
   public:
    explicit MatchingInfeasibleError(const std::string& what) : std::runtime_error(what) {
    }
};

namespace detail {

constexpr int64_t kNoEdge = -1;

/// Dense adjacency with parallel edges collapsed to their minimum weight.
inline std::vector<std::vector<int64_t>> adjacency(const MatchingProblem& problem) {
    int n = problem.n_nodes;
    std::vector<std::vector<int64_t>> w(n, std::vector<int64_t>(n, kNoEdge));
    for (const auto& e : problem.edges) {
        int64_t& slot = w[e.u][e.v];
        if (slot == kNoEdge || e.weight < slot) {
            slot = e.weight;
            w[e.v][e.u] = e.weight;
        }
    }
    return w;
}

/// Maximum weight matching on a dense graph, O(n^3), primal-dual with
/// blossom shrinking. Internal ids are 1-based; ids above n are blossoms.
/// Edge weights must be positive; zero marks an absent edge.
class BlossomSolver {
   public:
    explicit BlossomSolver(const std::vector<std::vector<int64_t>>& weights)
        : n_(static_cast<int>(weights.size())), n_x_(n_) {
        int cap = 2 * n_ + 1;
        g_.assign(cap, std::vector<Edge>(cap));
        for (int u = 1; u <= n_; ++u) {
            for (int v = 1; v <= n_; ++v) {
                g_[u][v] = Edge{u, v, 0};
            }
        }
        for (int u = 0; u < n_; ++u) {
            for (int v = 0; v < n_; ++v) {
                if (weights[u][v] > 0) {
                    g_[u + 1][v + 1].w = weights[u][v];
                }
            }
        }
        lab_.assign(cap, 0);
        match_.assign(cap, 0);
        slack_.assign(cap, 0);
        st_.assign(cap, 0);
        pa_.assign(cap, 0);
        s_.assign(cap, -1);
        vis_.assign(cap, 0);
        flower_.assign(cap, {});
        flower_from_.assign(cap, std::vector<int>(n_ + 1, 0));
    }

    /// Runs augmentations to exhaustion; match(u) is the partner of u
    /// (0-based, -1 if unmatched).
    void solve() {
        for (int u = 0; u <= 2 * n_; ++u) {
            st_[u] = u;
        }
        int64_t w_max = 0;
        for (int u = 1; u <= n_; ++u) {
            for (int v = 1; v <= n_; ++v) {
                flower_from_[u][v] = (u == v) ? u : 0;
                w_max = std::max(w_max, g_[u][v].w);
            }
        }
        for (int u = 1; u <= n_; ++u) {
            lab_[u] = w_max;
        }
        while (expand_phase()) {
        }
    }

    int match(int u) const {
        return match_[u + 1] - 1;
    }

   private:
    struct Edge {
        int u = 0;
        int v = 0;
        int64_t w = 0;
    };

    int64_t e_delta(const Edge& e) const {  // slack on a doubled scale
        return lab_[e.u] + lab_[e.v] - 2 * g_[e.u][e.v].w;
    }

    void update_slack(int u, int x) {
        if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) {
            slack_[x] = u;
        }
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u) {
            if (g_[u][x].w > 0 && st_[u] != x && s_[st_[u]] == 0) {
                update_slack(u, x);
            }
        }
    }

    void q_push(int x) {
        if (x <= n_) {
            queue_.push_back(x);
        } else {
            for (int sub : flower_[x]) {
                q_push(sub);
            }
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_) {
            for (int sub : flower_[x]) {
                set_st(sub, b);
            }
        }
    }

    int get_pr(int b, int xr) {
        int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
        if (pr % 2 == 1) {  // walk the other way around the odd cycle
            std::reverse(flower_[b].begin() + 1, flower_[b].end());
            return static_cast<int>(flower_[b].size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = g_[u][v].v;
        if (u <= n_) {
            return;
        }
        Edge e = g_[u][v];
        int xr = flower_from_[u][e.u];
        int pr = get_pr(u, xr);
        for (int i = 0; i < pr; ++i) {
            set_match(flower_[u][i], flower_[u][i ^ 1]);
        }
        set_match(xr, v);
        std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
    }

    void augment(int u, int v) {
        while (true) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv) {
                return;
            }
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timestamp_; u || v; std::swap(u, v)) {
            if (u == 0) {
                continue;
            }
            if (vis_[u] == timestamp_) {
                return u;
            }
            vis_[u] = timestamp_;
            u = st_[match_[u]];
            if (u) {
                u = st_[pa_[u]];
            }
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b]) {
            ++b;
        }
        if (b > n_x_) {
            ++n_x_;
        }
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) {
            g_[b][x].w = 0;
            g_[x][b].w = 0;
        }
        for (int x = 1; x <= n_; ++x) {
            flower_from_[b][x] = 0;
        }
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; ++x) {
                if (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x])) {
                    g_[b][x] = g_[xs][x];
                    g_[x][b] = g_[x][xs];
                }
            }
            for (int x = 1; x <= n_; ++x) {
                if (flower_from_[xs][x]) {
                    flower_from_[b][x] = xs;
                }
            }
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int sub : flower_[b]) {
            set_st(sub, sub);
        }
        int xr = flower_from_[b][g_[b][pa_[b]].u];
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i];
            int xns = flower_[b][i + 1];
            pa_[xs] = g_[xns][xs].u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (size_t i = pr + 1; i < flower_[b].size(); ++i) {
            int xs = flower_[b][i];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Edge& e) {
        int u = st_[e.u];
        int v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = 0;
            slack_[nu] = 0;
            s_[nu] = 0;
            q_push(nu);
        } else if (s_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    /// One search phase: grows alternating trees from all free nodes until an
    /// augmenting path is found (true) or the duals prove no augmentation is
    /// worthwhile (false).
    bool expand_phase() {
        std::fill(s_.begin() + 1, s_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
        queue_.clear();
        for (int x = 1; x <= n_x_; ++x) {
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                s_[x] = 0;
                q_push(x);
            }
        }
        if (queue_.empty()) {
            return false;
        }
        while (true) {
            while (!queue_.empty()) {
                int u = queue_.front();
                queue_.pop_front();
                if (s_[st_[u]] == 1) {
                    continue;
                }
                for (int v = 1; v <= n_; ++v) {
                    if (g_[u][v].w > 0 && st_[u] != st_[v]) {
                        if (e_delta(g_[u][v]) == 0) {
                            if (on_found_edge(g_[u][v])) {
                                return true;
                            }
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
                }
            }
            int64_t d = std::numeric_limits<int64_t>::max();
            for (int b = n_ + 1; b <= n_x_; ++b) {
                if (st_[b] == b && s_[b] == 1) {
                    d = std::min(d, lab_[b] / 2);
                }
            }
            for (int x = 1; x <= n_x_; ++x) {
                if (st_[x] == x && slack_[x]) {
                    if (s_[x] == -1) {
                        d = std::min(d, e_delta(g_[slack_[x]][x]));
                    } else if (s_[x] == 0) {
                        d = std::min(d, e_delta(g_[slack_[x]][x]) / 2);
                    }
                }
            }
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d) {
                        return false;  // no profitable augmentation remains
                    }
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b) {
                if (st_[b] == b) {
                    if (s_[b] == 0) {
                        lab_[b] += 2 * d;
                    } else if (s_[b] == 1) {
                        lab_[b] -= 2 * d;
                    }
                }
            }
            queue_.clear();
            for (int x = 1; x <= n_x_; ++x) {
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(g_[slack_[x]][x]) == 0) {
                    if (on_found_edge(g_[slack_[x]][x])) {
                        return true;
                    }
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b) {
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0) {
                    expand_blossom(b);
                }
            }
        }
    }

    int n_;
    int n_x_;
    int timestamp_ = 0;
    std::vector<std::vector<Edge>> g_;
    std::vector<int64_t> lab_;
    std::vector<int> match_, slack_, st_, pa_, s_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<std::vector<int>> flower_from_;
    std::deque<int> queue_;
};

}  // namespace detail

/// Exact minimum-weight perfect matching (Edmonds blossom, O(n^3)).
/// Throws MatchingInfeasibleError when no perfect matching exists.
inline Matching min_weight_perfect_matching(const MatchingProblem& problem) {
    if (problem.n_nodes % 2 != 0) {
        throw MatchingInfeasibleError("perfect matching needs an even node count");
    }
    Matching out;
    if (problem.n_nodes == 0) {
        return out;
    }
    auto w = detail::adjacency(problem);
    int n = problem.n_nodes;

    // Convert to a maximum-weight instance. The per-edge boost makes higher
    // cardinality always dominate, so a maximum-weight matching is perfect
    // whenever a perfect matching exists.
    int64_t w_max = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            w_max = std::max(w_max, w[u][v]);
        }
    }
    if (w_max > std::numeric_limits<int64_t>::max() / (4 * static_cast<int64_t>(n + 2))) {
        throw std::overflow_error("matching weights too large for exact arithmetic");
    }
    int64_t boost = static_cast<int64_t>(n + 1) * (w_max + 1);
    std::vector<std::vector<int64_t>> flipped(n, std::vector<int64_t>(n, 0));
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (w[u][v] != detail::kNoEdge) {
                flipped[u][v] = (w_max + 1 - w[u][v]) + boost;
            }
        }
    }

    detail::BlossomSolver solver(flipped);
    solver.solve();

    for (int u = 0; u < n; ++u) {
        int v = solver.match(u);
        if (v < 0) {
            throw MatchingInfeasibleError("no perfect matching covers node " + std::to_string(u));
        }
        if (u < v) {
            out.pairs.emplace_back(u, v);
            out.total_weight += w[u][v];
        }
    }
    std::sort(out.pairs.begin(), out.pairs.end());
    return out;
}

/// Exhaustive minimum over all (n-1)!! pairings; ties resolved toward the
/// lexicographically smallest pair list. Test oracle, n <= 14.
inline Matching brute_force_matching(const MatchingProblem& problem) {
    if (problem.n_nodes > 14) {
        throw std::invalid_argument("brute_force_matching is limited to n <= 14");
    }
    if (problem.n_nodes % 2 != 0) {
        throw MatchingInfeasibleError("perfect matching needs an even node count");
    }
    Matching best;
    if (problem.n_nodes == 0) {
        return best;
    }
    auto w = detail::adjacency(problem);
    int n = problem.n_nodes;
    bool found = false;
    best.total_weight = std::numeric_limits<int64_t>::max();
    std::vector<uint8_t> used(n, 0);
    std::vector<std::pair<uint32_t, uint32_t>> current;

    // Always pairs the lowest free node next, so pair lists are generated in
    // lexicographic order and the first optimum found is the tie-break winner.
    auto recurse = [&](auto&& self, int64_t weight) -> void {
        int u = 0;
        while (u < n && used[u]) {
            ++u;
        }
        if (u == n) {
            if (weight < best.total_weight) {
                best.total_weight = weight;
                best.pairs = current;
                found = true;
            }
            return;
        }
        used[u] = 1;
        for (int v = u + 1; v < n; ++v) {
            if (used[v] || w[u][v] == detail::kNoEdge) {
                continue;
            }
            if (found && weight + w[u][v] > best.total_weight) {
                continue;  // prune strictly worse branches only, to preserve tie-breaking
            }
            used[v] = 1;
            current.emplace_back(u, v);
            self(self, weight + w[u][v]);
            current.pop_back();
            used[v] = 0;
        }
        used[u] = 0;
    };
    recurse(recurse, 0);
    if (!found) {
        throw MatchingInfeasibleError("no perfect matching exists");
    }
    return best;
}

inline std::string matching_problem_to_text(const MatchingProblem& problem) {
    std::ostringstream out;
    out << problem.n_nodes << ' ' << problem.edges.size() << '\n';
    for (const auto& e : problem.edges) {
        out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    }
    return out.str();
}

inline MatchingProblem matching_problem_from_text(const std::string& text) {
    std::istringstream in(text);
    int n = 0;
    size_t m = 0;
    if (!(in >> n >> m)) {
        throw std::invalid_argument("matching text: missing header");
    }
    if (n < 0) {
        throw std::invalid_argument("matching text: negative node count");
    }
    MatchingProblem problem;
    problem.n_nodes = n;
    for (size_t i = 0; i < m; ++i) {
        uint32_t u = 0, v = 0;
        int64_t w = 0;
        if (!(in >> u >> v >> w)) {
            throw std::invalid_argument("matching text: truncated edge list");
        }
        problem.add_edge(u, v, w);
    }
    return problem;
}

inline std::string matching_to_text(const Matching& matching) {
    std::ostringstream out;
    out << matching.pairs.size() << ' ' << matching.total_weight << '\n';
    for (auto [u, v] : matching.pairs) {
        out << u << ' ' << v << '\n';
    }
    return out.str();
}

inline Matching matching_from_text(const std::string& text) {
    std::istringstream in(text);
    size_t n_pairs = 0;
    Matching matching;
    if (!(in >> n_pairs >> matching.total_weight)) {
        throw std::invalid_argument("matching text: missing header");
    }
    for (size_t i = 0; i < n_pairs; ++i) {
        uint32_t u = 0, v = 0;
        if (!(in >> u >> v)) {
            throw std::invalid_argument("matching text: truncated pair list");
        }
        matching.pairs.emplace_back(u, v);
    }
    return matching;
}

}  // namespace surflab

#endif
