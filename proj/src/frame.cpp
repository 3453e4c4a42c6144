// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/frame.hpp"

#include <stdexcept>

namespace cfmimo {

namespace {

Eigen::MatrixXcd psd_sqrt_complex(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
    const double max_ev = es.eigenvalues().maxCoeff();
    if (es.eigenvalues().minCoeff() < -1e-9 * std::max(max_ev, 1e-300))
        throw std::invalid_argument("channel correlation matrix is not PSD");
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Frame sample_frame(const SystemDims& dims, const ChannelStats& stats, const Eigen::MatrixXcd& Xp,
                   const Constellation& constellation, double sigma_n2, Rng& channel_rng,
                   Rng& data_rng, Rng& noise_rng) {
    if (stats.L() != dims.L || stats.K() != dims.K)
        throw std::invalid_argument("channel stats do not match dimensions");
    if (Xp.rows() != dims.K || Xp.cols() != dims.T_p)
        throw std::invalid_argument("pilot matrix has wrong shape");
    if (sigma_n2 < 0.0) throw std::invalid_argument("noise power must be nonnegative");

    const int LN = dims.L * dims.N;
    const int T = dims.T();
    Frame f;
    f.Xp = Xp;
    f.sigma_n2 = sigma_n2;

    f.H.resize(LN, dims.K);
    for (int l = 0; l < dims.L; ++l) {
        for (int k = 0; k < dims.K; ++k) {
            const Eigen::MatrixXcd& Xi = stats.corr(l, k);
            Eigen::VectorXcd g(dims.N);
            for (int n = 0; n < dims.N; ++n) g(n) = channel_rng.complex_normal(1.0);
            if (Xi.isDiagonal(1e-15)) {
                f.H.block(l * dims.N, k, dims.N, 1) =
                    Xi.diagonal().real().cwiseMax(0.0).cwiseSqrt().asDiagonal() * g;
            } else {
                f.H.block(l * dims.N, k, dims.N, 1) = psd_sqrt_complex(Xi) * g;
            }
        }
    }

    f.Xd.resize(dims.K, dims.T_d);
    f.Xd_idx.resize(dims.K, dims.T_d);
    for (int k = 0; k < dims.K; ++k) {
        for (int t = 0; t < dims.T_d; ++t) {
            const auto idx = static_cast<int>(data_rng.uniform_index(constellation.size()));
            f.Xd_idx(k, t) = idx;
            f.Xd(k, t) = constellation.symbols[static_cast<std::size_t>(idx)];
        }
    }

    Eigen::MatrixXcd X(dims.K, T);
    X.leftCols(dims.T_p) = f.Xp;
    X.rightCols(dims.T_d) = f.Xd;

    f.Y.resize(LN, T);
    f.Y.noalias() = f.H * X;
    for (int t = 0; t < T; ++t)
        for (int r = 0; r < LN; ++r) f.Y(r, t) += noise_rng.complex_normal(sigma_n2);

    return f;
}

}  // namespace cfmimo
