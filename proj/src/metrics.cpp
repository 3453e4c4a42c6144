// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfmimo {

Eigen::VectorXd pc_metric(const ChannelStats& stats, const Eigen::MatrixXcd& Xp, double sigma_n2) {
    const int L = stats.L();
    const int K = stats.K();
    if (Xp.rows() != K) throw std::invalid_argument("pilot matrix row count must equal K");
    if (sigma_n2 <= 0.0) throw std::invalid_argument("pc_metric requires sigma_n2 > 0");

    const Eigen::MatrixXcd gram_over_noise = (Xp * Xp.adjoint()) / sigma_n2;
    Eigen::VectorXd c = Eigen::VectorXd::Constant(K, std::numeric_limits<double>::infinity());
    for (int l = 0; l < L; ++l) {
        Eigen::MatrixXcd inner = gram_over_noise;
        for (int k = 0; k < K; ++k) {
            const double xi = stats.xi(l, k);
            if (xi <= 0.0) throw std::invalid_argument("pc_metric requires xi > 0");
            inner(k, k) += 1.0 / xi;
        }
        const Eigen::MatrixXcd inv =
            inner.llt().solve(Eigen::MatrixXcd::Identity(K, K));
        for (int k = 0; k < K; ++k)
            c(k) = std::min(c(k), inv(k, k).real() / stats.xi(l, k));
    }
    return c;
}

double nmse(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& H_hat) {
    if (H.rows() != H_hat.rows() || H.cols() != H_hat.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    const double denom = H.squaredNorm();
    if (denom <= 0.0) throw std::invalid_argument("nmse: reference channel has zero norm");
    return (H - H_hat).squaredNorm() / denom;
}

Eigen::VectorXd nmse_per_ue(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& H_hat) {
    if (H.rows() != H_hat.rows() || H.cols() != H_hat.cols())
        throw std::invalid_argument("nmse: shape mismatch");
    Eigen::VectorXd out(H.cols());
    for (Eigen::Index k = 0; k < H.cols(); ++k) {
        const double denom = H.col(k).squaredNorm();
        if (denom <= 0.0) throw std::invalid_argument("nmse: zero-norm UE column");
        out(k) = (H.col(k) - H_hat.col(k)).squaredNorm() / denom;
    }
    return out;
}

double ser(const Eigen::MatrixXi& idx_true, const Eigen::MatrixXi& idx_hat) {
    if (idx_true.rows() != idx_hat.rows() || idx_true.cols() != idx_hat.cols())
        throw std::invalid_argument("ser: shape mismatch");
    if (idx_true.size() == 0) return 0.0;
    return static_cast<double>((idx_true.array() != idx_hat.array()).count()) /
           static_cast<double>(idx_true.size());
}

Eigen::VectorXd ser_per_ue(const Eigen::MatrixXi& idx_true, const Eigen::MatrixXi& idx_hat) {
    if (idx_true.rows() != idx_hat.rows() || idx_true.cols() != idx_hat.cols())
        throw std::invalid_argument("ser: shape mismatch");
    Eigen::VectorXd out(idx_true.rows());
    for (Eigen::Index k = 0; k < idx_true.rows(); ++k)
        out(k) = idx_true.cols() == 0
                     ? 0.0
                     : static_cast<double>((idx_true.row(k).array() != idx_hat.row(k).array()).count()) /
                           static_cast<double>(idx_true.cols());
    return out;
}

Ecdf::Ecdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw std::invalid_argument("ecdf over empty sample set");
    std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double query) const {
    const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), query);
    return static_cast<double>(it - sorted_.begin()) / static_cast<double>(sorted_.size());
}

double Ecdf::quantile(double p) const {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile level must be in [0,1]");
    if (p <= 0.0) return sorted_.front();
    const auto n = static_cast<double>(sorted_.size());
    const auto idx = static_cast<std::size_t>(std::min(n - 1.0, std::ceil(p * n) - 1.0));
    return sorted_[idx];
}

std::vector<MetricBin> bin_by_metric(const std::vector<std::pair<double, double>>& metric_value,
                                     const std::vector<double>& edges) {
    if (edges.size() < 2) throw std::invalid_argument("need at least two bin edges");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw std::invalid_argument("bin edges must be strictly increasing");

    const std::size_t n_bins = edges.size() - 1;
    std::vector<double> sums(n_bins, 0.0);
    std::vector<std::size_t> counts(n_bins, 0);
    for (const auto& [metric, value] : metric_value) {
        if (metric < edges.front() || metric > edges.back()) continue;
        auto it = std::upper_bound(edges.begin(), edges.end(), metric);
        std::size_t bin = static_cast<std::size_t>(it - edges.begin());
        bin = (bin == 0) ? 0 : bin - 1;
        if (bin >= n_bins) bin = n_bins - 1;  // right edge closes the last bin
        sums[bin] += value;
        counts[bin] += 1;
    }

    std::vector<MetricBin> out;
    for (std::size_t i = 0; i < n_bins; ++i) {
        if (counts[i] == 0) continue;
        MetricBin b;
        b.lo = edges[i];
        b.hi = edges[i + 1];
        b.center = (edges[i] > 0.0) ? std::sqrt(edges[i] * edges[i + 1])
                                    : 0.5 * (edges[i] + edges[i + 1]);
        b.mean = sums[i] / static_cast<double>(counts[i]);
        b.count = counts[i];
        out.push_back(b);
    }
    return out;
}

std::vector<double> log_bin_edges(double lo, double hi, int bins) {
    if (!(lo > 0.0) || !(hi > lo) || bins < 1)
        throw std::invalid_argument("log_bin_edges requires 0 < lo < hi and bins >= 1");
    std::vector<double> edges(static_cast<std::size_t>(bins) + 1);
    const double llo = std::log10(lo);
    const double lhi = std::log10(hi);
    for (int i = 0; i <= bins; ++i)
        edges[static_cast<std::size_t>(i)] =
            std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) / bins);
    edges.front() = lo;
    edges.back() = hi;
    return edges;
}

}  // namespace cfmimo
