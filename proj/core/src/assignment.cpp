#include "segeval/assignment.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace segeval {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-augmenting-path Hungarian on a square k x k matrix, minimizing.
// Returns col -> row assignment plus the dual potentials; reduced costs
// a[i][j] - u[i] - v[j] are nonnegative and zero on matched edges.
struct HungarianSolution {
    std::vector<std::size_t> row_of_col;
    std::vector<double> u, v;
};

HungarianSolution solve_min(const std::vector<double>& a, std::size_t k) {
    const std::size_t none = k;
    std::vector<double> u(k + 1, 0.0), v(k + 1, 0.0);
    std::vector<std::size_t> p(k + 1, none);  // p[j]: row matched to column j; slot k is the virtual root
    std::vector<std::size_t> way(k + 1, 0);

    for (std::size_t i = 0; i < k; ++i) {
        p[k] = i;
        std::size_t j0 = k;
        std::vector<double> minv(k + 1, kInf);
        std::vector<bool> used(k + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if (used[j]) continue;
                const double cur = a[i0 * k + j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= k; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != none);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != k);
    }

    HungarianSolution sol;
    sol.row_of_col.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
    sol.u.assign(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(k));
    sol.v.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return sol;
}

// Kuhn augmenting search restricted to an adjacency list.
bool try_augment(std::size_t row, const std::vector<std::vector<std::size_t>>& adj,
                 std::vector<char>& visited, std::vector<std::size_t>& match_col_row,
                 std::size_t none) {
    for (std::size_t col : adj[row]) {
        if (visited[col]) continue;
        visited[col] = 1;
        if (match_col_row[col] == none ||
            try_augment(match_col_row[col], adj, visited, match_col_row, none)) {
            match_col_row[col] = row;
            return true;
        }
    }
    return false;
}

// Can all rows in `rows` be matched into columns not already taken?
bool completable(const std::vector<std::size_t>& rows,
                 const std::vector<std::vector<std::size_t>>& adj,
                 const std::vector<char>& col_taken, std::size_t k) {
    const std::size_t none = k;
    std::vector<std::size_t> match_col_row(k, none);
    std::vector<std::vector<std::size_t>> filtered(adj.size());
    for (std::size_t r : rows) {
        for (std::size_t c : adj[r]) {
            if (!col_taken[c]) filtered[r].push_back(c);
        }
    }
    for (std::size_t r : rows) {
        std::vector<char> visited(k, 0);
        if (!try_augment(r, filtered, visited, match_col_row, none)) return false;
    }
    return true;
}

}  // namespace

Assignment hungarian_match(const CostMatrix& cost) {
    Assignment out;
    const std::size_t m = cost.rows;
    const std::size_t n = cost.cols;
    if (m == 0 || n == 0) return out;

    const std::size_t k = std::max(m, n);
    std::vector<double> a(k * k, 0.0);  // minimized; padding stays 0
    double scale = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * k + j] = -cost.at(i, j);
            scale = std::max(scale, std::abs(cost.at(i, j)));
        }
    }

    const HungarianSolution sol = solve_min(a, k);
    const double eps = 1e-12 * scale;

    // Any optimal assignment uses only edges tight under the optimal duals,
    // so the lexicographic tie-break runs on the tight subgraph.
    auto tight = [&](std::size_t i, std::size_t j) {
        return a[i * k + j] - sol.u[i] - sol.v[j] <= eps;
    };

    std::vector<std::vector<std::size_t>> adj(k);
    bool unique = true;
    for (std::size_t i = 0; i < k; ++i) {
        // real columns first in ascending order, padded columns after
        for (std::size_t j = 0; j < k; ++j) {
            if (tight(i, j)) adj[i].push_back(j);
        }
        if (adj[i].size() != 1) unique = false;
        if (n < k) {
            std::stable_partition(adj[i].begin(), adj[i].end(),
                                  [&](std::size_t j) { return j < n; });
        }
    }

    // The O(k^4) lexicographic walk only matters when optima tie, which
    // needs repeated values; cap it so large degenerate inputs stay usable.
    std::vector<std::size_t> col_of_row(k, k);
    if (unique || k > 32) {
        for (std::size_t j = 0; j < k; ++j) col_of_row[sol.row_of_col[j]] = j;
    } else {
        std::vector<char> col_taken(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::size_t> rest;
            for (std::size_t r = i + 1; r < k; ++r) rest.push_back(r);
            for (std::size_t j : adj[i]) {
                if (col_taken[j]) continue;
                col_taken[j] = 1;
                if (completable(rest, adj, col_taken, k)) {
                    col_of_row[i] = j;
                    break;
                }
                col_taken[j] = 0;
            }
            assert(col_of_row[i] != k);
        }
    }

    for (std::size_t i = 0; i < m; ++i) {
        if (col_of_row[i] < n) {
            out.pairs.push_back({i, col_of_row[i], cost.at(i, col_of_row[i])});
        }
    }
    assert(out.pairs.size() == std::min(m, n));
    for (const auto& pair : out.pairs) {
        out.total_score += pair.iou;
    }
    return out;
}

}  // namespace segeval
