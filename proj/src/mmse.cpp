// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/mmse.hpp"

#include <stdexcept>

namespace cfmimo {

namespace {

// Shared core: estimate vec(H_l) from vec(Y_l) = (X^T kron I_N) vec(H_l) + n
// for an arbitrary symbol block X (K x T).
MmseEstimate block_mmse(const Eigen::MatrixXcd& Y_l, const Eigen::MatrixXcd& X,
                        const ChannelStats& stats, int l, int N, double sigma_n2) {
    const int K = static_cast<int>(X.rows());
    const int T = static_cast<int>(X.cols());
    if (Y_l.rows() != N || Y_l.cols() != T)
        throw std::invalid_argument("received block has wrong shape");
    if (stats.K() != K) throw std::invalid_argument("stats do not match symbol block");
    if (sigma_n2 < 0.0) throw std::invalid_argument("noise power must be nonnegative");

    const int KN = K * N;
    const int TN = T * N;

    // Xt = X^T kron I_N maps the stacked channel to the vectorized block.
    Eigen::MatrixXcd Xt = Eigen::MatrixXcd::Zero(TN, KN);
    for (int t = 0; t < T; ++t)
        for (int k = 0; k < K; ++k)
            Xt.block(t * N, k * N, N, N) =
                X(k, t) * Eigen::MatrixXcd::Identity(N, N);

    Eigen::MatrixXcd Xi = Eigen::MatrixXcd::Zero(KN, KN);
    for (int k = 0; k < K; ++k) Xi.block(k * N, k * N, N, N) = stats.corr(l, k);

    const Eigen::MatrixXcd XiXtH = Xi * Xt.adjoint();
    Eigen::MatrixXcd S = Xt * XiXtH;
    S += sigma_n2 * Eigen::MatrixXcd::Identity(TN, TN);

    Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (S + S.adjoint()));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("MMSE observation covariance is singular (noiseless, rank-deficient pilots)");

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(TN);
    for (int t = 0; t < T; ++t) y.segment(t * N, N) = Y_l.col(t);

    const Eigen::VectorXcd mu_all = XiXtH * llt.solve(y);
    Eigen::MatrixXcd C_all = Xi - XiXtH * llt.solve(XiXtH.adjoint());
    C_all = 0.5 * (C_all + C_all.adjoint()).eval();

    MmseEstimate est;
    est.mu.reserve(static_cast<std::size_t>(K));
    est.C.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        est.mu.push_back(mu_all.segment(k * N, N));
        est.C.push_back(C_all.block(k * N, k * N, N, N));
    }
    return est;
}

}  // namespace

MmseEstimate pilot_mmse(const Eigen::MatrixXcd& Yp_l, const Eigen::MatrixXcd& Xp,
                        const ChannelStats& stats, int l, int N, double sigma_n2) {
    return block_mmse(Yp_l, Xp, stats, l, N, sigma_n2);
}

MmseEstimate genie_mmse(const Eigen::MatrixXcd& Y_l, const Eigen::MatrixXcd& X_full,
                        const ChannelStats& stats, int l, int N, double sigma_n2) {
    return block_mmse(Y_l, X_full, stats, l, N, sigma_n2);
}

std::vector<MmseEstimate> pilot_mmse_all(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& Xp,
                                         const ChannelStats& stats, const SystemDims& dims,
                                         double sigma_n2) {
    std::vector<MmseEstimate> out;
    out.reserve(static_cast<std::size_t>(dims.L));
    for (int l = 0; l < dims.L; ++l)
        out.push_back(pilot_mmse(Y.block(l * dims.N, 0, dims.N, dims.T_p), Xp, stats, l, dims.N,
                                 sigma_n2));
    return out;
}

std::vector<MmseEstimate> genie_mmse_all(const Eigen::MatrixXcd& Y, const Eigen::MatrixXcd& X_full,
                                         const ChannelStats& stats, const SystemDims& dims,
                                         double sigma_n2) {
    std::vector<MmseEstimate> out;
    out.reserve(static_cast<std::size_t>(dims.L));
    for (int l = 0; l < dims.L; ++l)
        out.push_back(genie_mmse(Y.middleRows(l * dims.N, dims.N), X_full, stats, l, dims.N,
                                 sigma_n2));
    return out;
}

Eigen::MatrixXcd stack_means(const std::vector<MmseEstimate>& per_ap, const SystemDims& dims) {
    Eigen::MatrixXcd H_hat(dims.L * dims.N, dims.K);
    for (int l = 0; l < dims.L; ++l)
        for (int k = 0; k < dims.K; ++k)
            H_hat.block(l * dims.N, k, dims.N, 1) = per_ap[static_cast<std::size_t>(l)].mu[static_cast<std::size_t>(k)];
    return H_hat;
}

Eigen::MatrixXi mmse_detect(const Eigen::MatrixXcd& Yd, const Eigen::MatrixXcd& H_hat,
                            double sigma_n2, const Constellation& constellation) {
    const int K = static_cast<int>(H_hat.cols());
    const int T_d = static_cast<int>(Yd.cols());
    if (Yd.rows() != H_hat.rows()) throw std::invalid_argument("Yd and H_hat row mismatch");

    Eigen::MatrixXcd G = H_hat.adjoint() * H_hat;
    G += (sigma_n2 / constellation.sigma_x2) * Eigen::MatrixXcd::Identity(K, K);
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(G);

    Eigen::MatrixXi detected(K, T_d);
    const Eigen::MatrixXcd rhs = H_hat.adjoint() * Yd;
    const Eigen::MatrixXcd eq = ldlt.solve(rhs);
    for (int t = 0; t < T_d; ++t)
        for (int k = 0; k < K; ++k)
            detected(k, t) = static_cast<int>(constellation.nearest(eq(k, t)));
    return detected;
}

}  // namespace cfmimo
