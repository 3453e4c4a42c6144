// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/gaussian.hpp"

#include <stdexcept>

namespace cfmimo {

bool is_hermitian_pd(const Eigen::MatrixXcd& a, double tol_rel) {
    if (a.rows() != a.cols() || a.rows() == 0) return false;
    const Eigen::MatrixXcd sym = 0.5 * (a + a.adjoint());
    const double tr = sym.real().trace();
    if (!(tr > 0.0) || !sym.allFinite()) return false;
    const double pivot_floor = tol_rel * tr / static_cast<double>(sym.rows());
    Eigen::LLT<Eigen::MatrixXcd> llt(sym);
    if (llt.info() != Eigen::Success) return false;
    const auto& l = llt.matrixLLT();
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        const double pivot = std::norm(l(i, i));  // L(i,i)^2
        if (!(pivot > pivot_floor)) return false;
    }
    return true;
}

GaussianBelief GaussianBelief::from_moments(const Eigen::VectorXcd& mu,
                                            const Eigen::MatrixXcd& c) {
    Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (c + c.adjoint()));
    if (llt.info() != Eigen::Success)
        throw std::invalid_argument("GaussianBelief: covariance is not Hermitian PD");
    GaussianBelief b;
    b.lambda_ = llt.solve(Eigen::MatrixXcd::Identity(c.rows(), c.cols()));
    b.lambda_ = 0.5 * (b.lambda_ + b.lambda_.adjoint()).eval();
    b.gamma_ = b.lambda_ * mu;
    b.mu_ = mu;
    b.cov_ = c;
    return b;
}

void GaussianBelief::materialize_moments() const {
    if (mu_ && cov_) return;
    if (!informative()) throw std::runtime_error("uninformative Gaussian has no moment form");
    Eigen::LLT<Eigen::MatrixXcd> llt(0.5 * (lambda_ + lambda_.adjoint()));
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Gaussian precision is not Hermitian PD");
    Eigen::MatrixXcd cov = llt.solve(Eigen::MatrixXcd::Identity(lambda_.rows(), lambda_.cols()));
    cov_ = (0.5 * (cov + cov.adjoint())).eval();
    mu_ = llt.solve(gamma_);
}

const Eigen::VectorXcd& GaussianBelief::mean() const {
    materialize_moments();
    return *mu_;
}

const Eigen::MatrixXcd& GaussianBelief::covariance() const {
    materialize_moments();
    return *cov_;
}

}  // namespace cfmimo
