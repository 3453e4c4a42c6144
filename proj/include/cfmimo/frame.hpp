// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_FRAME_HPP
#define CFMIMO_FRAME_HPP

#include <Eigen/Dense>
#include <vector>

#include "cfmimo/constellation.hpp"
#include "cfmimo/rng.hpp"
#include "cfmimo/scenario.hpp"

namespace cfmimo {

/// One synthesized coherence block: Y = H [Xp Xd] + noise.
struct Frame {
    Eigen::MatrixXcd Xp;  // K x T_p
    Eigen::MatrixXcd Xd;  // K x T_d, entries drawn from the constellation
    Eigen::MatrixXi Xd_idx;  // K x T_d constellation indices of Xd
    Eigen::MatrixXcd H;   // (L*N) x K
    Eigen::MatrixXcd Y;   // (L*N) x T
    double sigma_n2 = 0.0;

    // Received block of AP l (N consecutive rows).
    Eigen::MatrixXcd ap_rows(int l, int N) const { return Y.middleRows(l * N, N); }
};

// Draws h_{l,k} ~ CN(0, Xi_{l,k}), data symbols i.i.d. uniform over the
// constellation, AWGN with power sigma_n2, and synthesizes Y. Channel draws
// come from `channel_rng`, symbols from `data_rng`, noise from `noise_rng`,
// so the three can be replayed independently.
Frame sample_frame(const SystemDims& dims, const ChannelStats& stats, const Eigen::MatrixXcd& Xp,
                   const Constellation& constellation, double sigma_n2, Rng& channel_rng,
                   Rng& data_rng, Rng& noise_rng);

}  // namespace cfmimo

#endif
