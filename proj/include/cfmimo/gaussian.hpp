// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_GAUSSIAN_HPP
#define CFMIMO_GAUSSIAN_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>

namespace cfmimo {

// Hermitian positive-definiteness test used by the message guard: symmetrize,
// factorize, and require every Cholesky pivot to exceed tol_rel * trace / n.
bool is_hermitian_pd(const Eigen::MatrixXcd& a, double tol_rel = 1e-12);

/**
 * Complex multivariate Gaussian message in dual representation.
 *
 * The natural parameters gamma = C^-1 mu and Lambda = C^-1 are the ground
 * truth; moment parameters are derived on demand and cached. Lambda = 0,
 * gamma = 0 encodes the uninformative message, which has no moment form --
 * callers must check informative() before asking for mean()/covariance().
 */
class GaussianBelief {
public:
    GaussianBelief() = default;

    static GaussianBelief uninformative(Eigen::Index dim) {
        GaussianBelief b;
        b.gamma_ = Eigen::VectorXcd::Zero(dim);
        b.lambda_ = Eigen::MatrixXcd::Zero(dim, dim);
        return b;
    }

    // C must be Hermitian PD; throws std::invalid_argument otherwise.
    static GaussianBelief from_moments(const Eigen::VectorXcd& mu, const Eigen::MatrixXcd& c);

    static GaussianBelief from_natural(const Eigen::VectorXcd& gamma,
                                       const Eigen::MatrixXcd& lambda) {
        GaussianBelief b;
        b.gamma_ = gamma;
        b.lambda_ = lambda;
        return b;
    }

    Eigen::Index dim() const { return gamma_.size(); }
    bool informative() const { return lambda_.squaredNorm() > 0.0; }

    const Eigen::VectorXcd& natural_mean() const { return gamma_; }
    const Eigen::MatrixXcd& precision() const { return lambda_; }

    // Moment form; requires Lambda Hermitian PD (throws std::runtime_error
    // for uninformative or indefinite messages).
    const Eigen::VectorXcd& mean() const;
    const Eigen::MatrixXcd& covariance() const;

    void set_natural(const Eigen::VectorXcd& gamma, const Eigen::MatrixXcd& lambda) {
        gamma_ = gamma;
        lambda_ = lambda;
        drop_moment_cache();
    }

    // Convex blend in natural-parameter space: this <- eta*fresh + (1-eta)*this.
    void damp_towards(const GaussianBelief& fresh, double eta) {
        gamma_ = eta * fresh.gamma_ + (1.0 - eta) * gamma_;
        lambda_ = eta * fresh.lambda_ + (1.0 - eta) * lambda_;
        drop_moment_cache();
    }

private:
    void drop_moment_cache() {
        mu_.reset();
        cov_.reset();
    }
    void materialize_moments() const;

    Eigen::VectorXcd gamma_;
    Eigen::MatrixXcd lambda_;
    mutable std::optional<Eigen::VectorXcd> mu_;
    mutable std::optional<Eigen::MatrixXcd> cov_;
};

}  // namespace cfmimo

#endif
