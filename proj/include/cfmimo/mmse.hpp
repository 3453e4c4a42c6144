// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_MMSE_HPP
#define CFMIMO_MMSE_HPP

#include <Eigen/Dense>
#include <vector>

#include "cfmimo/constellation.hpp"
#include "cfmimo/scenario.hpp"

namespace cfmimo {

/// Linear MMSE channel estimate for one AP: per-UE conditional mean and
/// error covariance of h_{l,k} given the observed block.
struct MmseEstimate {
    std::vector<Eigen::VectorXcd> mu;  // K entries, each N-vector
    std::vector<Eigen::MatrixXcd> C;   // K entries, each N x N
};

// Pilot-based MMSE estimate at AP l from its received pilot block Yp_l
// (N x T_p). Stacks vec(Y) = (Xp^T kron I_N) vec(H_l) + noise, conditions the
// joint Gaussian, and slices the result per UE. sigma_n2 = 0 is accepted only
// while the stacked pilot matrix keeps the observation covariance invertible;
// otherwise throws std::runtime_error.
MmseEstimate pilot_mmse(const Eigen::MatrixXcd& Yp_l, const Eigen::MatrixXcd& Xp,
                        const ChannelStats& stats, int l, int N, double sigma_n2);

// Genie-aided variant: identical formula with the full K x T symbol matrix
// (pilots and true data) in place of Xp.
MmseEstimate genie_mmse(const Eigen::MatrixXcd& Y_l, const Eigen::MatrixXcd& X_full,
                        const ChannelStats& stats, int l, int N, double sigma_n2);

// Runs pilot_mmse (or genie_mmse) for every AP and stacks the means into an
// (L*N) x K channel matrix estimate.
std::vector<MmseEstimate> pilot_mmse_all(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& Xp,
                                         const ChannelStats& stats, const SystemDims& dims,
                                         double sigma_n2);
std::vector<MmseEstimate> genie_mmse_all(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& X_full,
                                         const ChannelStats& stats, const SystemDims& dims,
                                         double sigma_n2);
Eigen::MatrixXcd stack_means(const std::vector<MmseEstimate>& per_ap, const SystemDims& dims);

// Centralized linear MMSE detector: per data slot, equalize
//   x_hat = (H^H H + (sigma_n2 / sigma_x2) I)^-1 H^H y
// and map each entry to the nearest constellation point. Returns detected
// symbol indices (K x T_d).
Eigen::MatrixXi mmse_detect(const Eigen::MatrixXcd& Yd, const Eigen::MatrixXcd& H_hat,
                            double sigma_n2, const Constellation& constellation);

}  // namespace cfmimo

#endif
