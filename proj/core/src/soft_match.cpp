#include "segeval/soft_match.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace segeval {

namespace {

void check_gamma(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw std::invalid_argument("gamma must be positive and finite");
    }
}

// (m+1) x (n+1) min-table over negated costs; shared by forward and backward.
std::vector<double> fill_soft_table(const CostMatrix& cost, double gamma) {
    const std::size_t rows = cost.rows + 1;
    const std::size_t cols = cost.cols + 1;
    std::vector<double> table(rows * cols, 0.0);
    for (std::size_t i = 1; i < rows; ++i) {
        for (std::size_t j = 1; j < cols; ++j) {
            const double inputs[3] = {
                table[(i - 1) * cols + j],                              // top
                table[(i - 1) * cols + (j - 1)] - cost.at(i - 1, j - 1),  // diagonal
                table[i * cols + (j - 1)],                              // left
            };
            table[i * cols + j] = smooth_min(inputs, gamma);
        }
    }
    return table;
}

}  // namespace

double smooth_min(std::span<const double> values, double gamma) {
    check_gamma(gamma);
    if (values.empty()) {
        throw std::invalid_argument("smooth_min of an empty list");
    }
    const double lo = *std::min_element(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += std::exp((lo - v) / gamma);
    }
    return lo - gamma * std::log(sum);
}

double soft_forward(const CostMatrix& cost, double gamma) {
    check_gamma(gamma);
    const std::vector<double> table = fill_soft_table(cost, gamma);
    return -table.back();
}

SoftMatchResult soft_backward(const CostMatrix& cost, double gamma) {
    check_gamma(gamma);
    const std::size_t m = cost.rows;
    const std::size_t n = cost.cols;
    const std::size_t cols = n + 1;
    const std::vector<double> table = fill_soft_table(cost, gamma);

    SoftMatchResult result;
    result.gamma = gamma;
    result.soft_score = -table.back();
    result.grad_cost = CostMatrix(m, n);
    if (m == 0 || n == 0) {
        result.alignment = result.grad_cost;
        return result;
    }

    // Softmax weight of one input of cell (i,j): exp((out - input)/gamma).
    auto weight = [&](std::size_t i, std::size_t j, int which) {
        const double out = table[i * cols + j];
        double input = 0.0;
        switch (which) {
            case 0: input = table[(i - 1) * cols + j]; break;                                // top
            case 1: input = table[(i - 1) * cols + (j - 1)] - cost.at(i - 1, j - 1); break;  // diag
            default: input = table[i * cols + (j - 1)]; break;                               // left
        }
        return std::exp((out - input) / gamma);
    };

    // path_mass[i][j] = d table[m][n] / d table[i][j], accumulated backward.
    std::vector<double> path_mass((m + 1) * (n + 1), 0.0);
    path_mass[m * cols + n] = 1.0;
    for (std::size_t ii = m + 1; ii-- > 0;) {
        for (std::size_t jj = n + 1; jj-- > 0;) {
            if (ii == m && jj == n) continue;
            double mass = 0.0;
            if (ii + 1 <= m && jj >= 1) {
                mass += path_mass[(ii + 1) * cols + jj] * weight(ii + 1, jj, 0);
            }
            if (ii + 1 <= m && jj + 1 <= n) {
                mass += path_mass[(ii + 1) * cols + (jj + 1)] * weight(ii + 1, jj + 1, 1);
            }
            if (jj + 1 <= n && ii >= 1) {
                mass += path_mass[ii * cols + (jj + 1)] * weight(ii, jj + 1, 2);
            }
            path_mass[ii * cols + jj] = mass;
        }
    }

    // d(-table[m][n]) / d cost(i,j) routes through the diagonal input of
    // cell (i+1, j+1), which carries -cost(i,j); the two signs cancel.
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            result.grad_cost.at(i, j) = path_mass[(i + 1) * cols + (j + 1)] * weight(i + 1, j + 1, 1);
        }
    }
    result.alignment = result.grad_cost;
    return result;
}

BoundaryGrad iou_boundary_grad(const Segment& gt, const Segment& pred) {
    BoundaryGrad grad;
    const double inter = std::min(gt.end, pred.end) - std::max(gt.start, pred.start);
    if (inter <= 0.0) {
        return grad;  // disjoint: flat region
    }
    const double uni = gt.length() + pred.length() - inter;
    const double di_dstart = pred.start > gt.start ? -1.0 : 0.0;
    const double di_dend = pred.end < gt.end ? 1.0 : 0.0;
    const double du_dstart = -1.0 - di_dstart;
    const double du_dend = 1.0 - di_dend;
    grad.d_start = (di_dstart * uni - inter * du_dstart) / (uni * uni);
    grad.d_end = (di_dend * uni - inter * du_dend) / (uni * uni);
    return grad;
}

SoftLossResult soft_match_loss(const VideoAnnotation& gt, const std::vector<Segment>& predictions,
                               double gamma) {
    check_gamma(gamma);
    if (gt.segments.empty()) {
        throw std::invalid_argument("soft_match_loss requires ground-truth segments");
    }

    // Temporal order for the DP, with a map back to caller indices.
    std::vector<std::size_t> order(predictions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (predictions[a].start != predictions[b].start)
            return predictions[a].start < predictions[b].start;
        if (predictions[a].end != predictions[b].end)
            return predictions[a].end < predictions[b].end;
        return a < b;
    });

    VideoAnnotation sorted_pred;
    sorted_pred.video_id = gt.video_id;
    sorted_pred.duration = gt.duration;
    for (std::size_t idx : order) sorted_pred.segments.push_back(predictions[idx]);

    const CostMatrix cost = build_cost_matrix(gt, sorted_pred);
    const SoftMatchResult soft = soft_backward(cost, gamma);

    SoftLossResult out;
    out.soft_score = soft.soft_score;
    out.loss = static_cast<double>(gt.segments.size()) - soft.soft_score;
    out.boundary_grad.assign(predictions.size(), BoundaryGrad{});
    for (std::size_t j = 0; j < sorted_pred.segments.size(); ++j) {
        BoundaryGrad acc;
        for (std::size_t i = 0; i < gt.segments.size(); ++i) {
            const double w = soft.grad_cost.at(i, j);
            if (w == 0.0) continue;
            const BoundaryGrad g = iou_boundary_grad(gt.segments[i], sorted_pred.segments[j]);
            acc.d_start += w * g.d_start;
            acc.d_end += w * g.d_end;
        }
        // loss = m - soft_score, so boundary gradients flip sign
        out.boundary_grad[order[j]].d_start = -acc.d_start;
        out.boundary_grad[order[j]].d_end = -acc.d_end;
    }
    return out;
}

}  // namespace segeval
