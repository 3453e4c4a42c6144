// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_EP_HPP
#define CFMIMO_EP_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfmimo/constellation.hpp"
#include "cfmimo/frame.hpp"
#include "cfmimo/gaussian.hpp"
#include "cfmimo/mmse.hpp"
#include "cfmimo/scenario.hpp"

namespace cfmimo {

/// Probability vector over the constellation for one data-symbol edge.
struct CategoricalBelief {
    Eigen::VectorXd probs;

    static CategoricalBelief uniform(Eigen::Index m) {
        return {Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m))};
    }

    // Normalizes to unit sum while guaranteeing every entry >= floor. The
    // clamp happens slightly above the floor so the post-normalization
    // entries still clear it.
    void normalize_floor(double floor);

    double entropy_bits() const;
};

struct EPConfig {
    int max_iter = 20;
    double eta = 0.5;          // damping weight on the fresh message, in [0,1]
    bool legacy_mode = false;  // restrict Gaussian updates to data slots
    double variance_floor = -1.0;  // absolute (watts); < 0 selects 1e-12 * sigma_x2
    double prob_floor = 1e-12;
    bool apply_damping = true;  // force-commit fresh messages when false
    bool record_trace = false;

    void validate() const {
        if (eta < 0.0 || eta > 1.0) throw std::invalid_argument("eta must lie in [0,1]");
        if (max_iter < 0) throw std::invalid_argument("max_iter must be nonnegative");
    }
};

struct IterationDiag {
    int iteration = 0;
    double nmse = -1.0;  // -1 when no reference channel was supplied
    double mean_symbol_entropy_bits = 0.0;
    int guard_rejections = 0;
};

struct EPResult {
    Eigen::MatrixXcd H_hat;                   // (L*N) x K
    Eigen::MatrixXi Xd_idx;                   // K x T_d detected indices
    std::vector<Eigen::VectorXd> posterior;   // per (k, t_d): M probabilities
    bool diverged = false;
    std::string divergence_note;
    std::vector<IterationDiag> trace;
    int guard_rejections_total = 0;
};

/// Thrown when a non-finite message parameter is about to be committed.
struct DivergedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Bilinear-EP engine for one coherence block.
 *
 * Models h_{l,k} and the auxiliaries z_{l,kt} = h_{l,k} x_{kt} as complex
 * Gaussians and the data symbols as categoricals, and sweeps the factor
 * graph in the fixed phase order
 *   y->z, z->x, x->z, z->h, h->z, z->z
 * with convex damping on factor-to-variable messages. In the default mode
 * every Gaussian update also runs over the pilot slots and the h->z
 * combination sums over the whole block; legacy mode restricts all of them
 * to data slots, reproducing the earlier semi-blind variant.
 *
 * Channel updates (z->h, z->z) are committed only when the resulting
 * precision is Hermitian PD; otherwise the previous message is retained.
 */
class EPEngine {
public:
    EPEngine(const Frame& frame, const std::vector<MmseEstimate>& prior,
             const Constellation& constellation, const SystemDims& dims, const EPConfig& config);

    // One full scheduling sweep. Throws DivergedError on non-finite messages.
    void iterate();

    int iterations_done() const { return iteration_; }
    int guard_rejections_last_iter() const { return guard_rejections_last_; }
    int guard_rejections_total() const { return guard_rejections_total_; }

    // Posterior channel estimate from the current messages.
    Eigen::MatrixXcd channel_estimate() const;
    // Posterior symbol distribution (normalized) for data slot t_d of UE k.
    Eigen::VectorXd symbol_posterior(int k, int t_d) const;
    Eigen::MatrixXi detect_symbols() const;  // argmax, lowest index on ties
    double mean_posterior_entropy_bits() const;

    // Raw single-edge updates exactly as the update rules state them (direct
    // neighbor sums, no damping, no commit). The sweep itself uses
    // total-minus-self accumulations; these entry points exist so the two
    // routes can be checked against each other.
    GaussianBelief compute_y_to_z(int l, int k, int t) const;
    CategoricalBelief compute_z_to_x(int l, int k, int t) const;
    CategoricalBelief compute_x_to_z(int l, int k, int t) const;
    GaussianBelief compute_z_to_h(int l, int k, int t, bool& pd_ok) const;
    GaussianBelief compute_h_to_z(int l, int k, int t) const;
    GaussianBelief compute_z_to_z(int l, int k, int t, bool& pd_ok) const;

    // Committed message accessors (tests and diagnostics).
    const GaussianBelief& msg_y_to_z(int l, int k, int t) const { return y2z_[gidx(l, k, t)]; }
    const GaussianBelief& msg_z_to_z(int l, int k, int t) const { return z2z_[gidx(l, k, t)]; }
    const GaussianBelief& msg_z_to_h(int l, int k, int t) const { return z2h_[hidx(l, k, t)]; }
    const GaussianBelief& msg_h_to_z(int l, int k, int t) const { return h2z_[hidx(l, k, t)]; }
    const GaussianBelief& msg_prior(int l, int k) const { return prior_[pidx(l, k)]; }
    const CategoricalBelief& msg_z_to_x(int l, int k, int t) const { return z2x_[cidx(l, k, t)]; }
    const CategoricalBelief& msg_x_to_z(int l, int k, int t) const { return x2z_[cidx(l, k, t)]; }

    const EPConfig& config() const { return cfg_; }
    const SystemDims& dims() const { return dims_; }

private:
    // Gaussian mixture collapse over the constellation at edge (l,k,t):
    // b1 lives on h (with the 1/x rescale), b2 on z. For pilot slots the
    // collapse degenerates to the known pilot symbol.
    struct Collapse {
        Eigen::VectorXcd gamma_b1, gamma_b2;
        Eigen::MatrixXcd lambda_b1, lambda_b2;
        bool b1_ok = false, b2_ok = false;
    };
    Collapse collapse_mixture(int l, int k, int t) const;
    // log theta(x) for every constellation point (uniform when the y->z
    // message has no moment form yet).
    Eigen::VectorXd log_theta(int l, int k, int t) const;

    void phase_y_to_z();
    void phase_z_to_x();
    void phase_x_to_z();
    void phase_z_to_h();
    void phase_h_to_z();
    void phase_z_to_z();

    void commit_gaussian(GaussianBelief& slot, const Eigen::VectorXcd& gamma,
                         const Eigen::MatrixXcd& lambda);
    void commit_categorical(CategoricalBelief& slot, CategoricalBelief fresh);

    std::size_t gidx(int l, int k, int t) const {
        return (static_cast<std::size_t>(l) * T_ + t) * K_ + k;
    }
    std::size_t hidx(int l, int k, int t) const {
        return (static_cast<std::size_t>(l) * K_ + k) * T_ + t;
    }
    std::size_t pidx(int l, int k) const { return static_cast<std::size_t>(l) * K_ + k; }
    std::size_t cidx(int l, int k, int t) const {
        return (static_cast<std::size_t>(k) * Td_ + (t - Tp_)) * L_ + l;
    }

    int first_gaussian_slot() const { return cfg_.legacy_mode ? Tp_ : 0; }

    SystemDims dims_;
    EPConfig cfg_;
    int L_, N_, K_, T_, Tp_, Td_;
    double sigma_n2_;
    double var_floor_;
    Eigen::MatrixXcd Y_;
    Eigen::MatrixXcd Xp_;
    std::vector<std::complex<double>> symbols_;
    double sigma_x2_;

    std::vector<GaussianBelief> y2z_, z2z_, z2h_, h2z_, prior_;
    std::vector<CategoricalBelief> z2x_, x2z_;

    int iteration_ = 0;
    int guard_rejections_last_ = 0;
    int guard_rejections_total_ = 0;
};

// Runs the full pipeline: init from the pilot-MMSE prior, max_iter sweeps,
// final channel/data extraction. Divergence is reported in the result, never
// thrown. When H_true is given the trace carries a per-iteration NMSE.
EPResult run_jcd(const Frame& frame, const std::vector<MmseEstimate>& prior,
                 const Constellation& constellation, const SystemDims& dims, const EPConfig& config,
                 const Eigen::MatrixXcd* H_true = nullptr);

}  // namespace cfmimo

#endif
