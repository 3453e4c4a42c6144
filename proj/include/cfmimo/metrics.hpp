// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_METRICS_HPP
#define CFMIMO_METRICS_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "cfmimo/scenario.hpp"

namespace cfmimo {

// Per-UE pilot-contamination metric:
//   c_k = min_l [ (diag(xi_l)^-1 + Xp Xp^H / sigma_n2)^-1 ]_{k,k} / xi_{l,k}
// Values lie in (0, 1] for sigma_n2 > 0; lower means less contamination.
Eigen::VectorXd pc_metric(const ChannelStats& stats, const Eigen::MatrixXcd& Xp, double sigma_n2);

// Single-realization normalized channel estimation error ||H - H_hat||_F^2 / ||H||_F^2.
double nmse(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& H_hat);
// Per-UE variant over the stacked columns.
Eigen::VectorXd nmse_per_ue(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& H_hat);

// Fraction of mismatched symbol indices.
double ser(const Eigen::MatrixXi& idx_true, const Eigen::MatrixXi& idx_hat);
Eigen::VectorXd ser_per_ue(const Eigen::MatrixXi& idx_true, const Eigen::MatrixXi& idx_hat);

/// Right-continuous empirical CDF over a nonempty sample set.
class Ecdf {
public:
    explicit Ecdf(std::vector<double> samples);
    double operator()(double query) const;  // fraction of samples <= query
    double quantile(double p) const;        // inverse CDF, p in [0,1]
    const std::vector<double>& sorted_samples() const { return sorted_; }

private:
    std::vector<double> sorted_;
};

struct MetricBin {
    double lo = 0.0;
    double hi = 0.0;
    double center = 0.0;  // geometric center for log-spaced edges
    double mean = 0.0;
    std::size_t count = 0;
};

// Means of `value` grouped by which [edge_i, edge_i+1) bin its metric falls
// in (last bin closes at the right edge). Empty bins are omitted.
std::vector<MetricBin> bin_by_metric(const std::vector<std::pair<double, double>>& metric_value,
                                     const std::vector<double>& edges);

// Log-spaced edges covering [lo, hi].
std::vector<double> log_bin_edges(double lo, double hi, int bins);

}  // namespace cfmimo

#endif
