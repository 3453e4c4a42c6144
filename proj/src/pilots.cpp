// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/pilots.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfmimo {

Eigen::MatrixXcd make_hadamard_pilots(const SystemDims& dims, const Constellation& constellation) {
    const int tp = dims.T_p;
    if (tp <= 0 || (tp & (tp - 1)) != 0)
        throw std::invalid_argument("Hadamard pilots require T_p to be a power of two");
    if (tp > dims.K) throw std::invalid_argument("Hadamard pilots require T_p <= K");

    // Sylvester construction; entry (r,c) = (-1)^popcount(r & c).
    const double amp = std::sqrt(constellation.sigma_x2);
    Eigen::MatrixXcd pilots(dims.K, tp);
    for (int k = 0; k < dims.K; ++k) {
        const int row = k % tp;
        for (int t = 0; t < tp; ++t) {
            const int sign = (__builtin_popcount(static_cast<unsigned>(row & t)) & 1) ? -1 : 1;
            pilots(k, t) = std::complex<double>(sign * amp, 0.0);
        }
    }
    return pilots;
}

Eigen::MatrixXcd make_dft_pilots(const SystemDims& dims, const Constellation& constellation) {
    if (dims.T_p > dims.K) throw std::invalid_argument("DFT pilots require T_p <= K");
    const double amp = std::sqrt(constellation.sigma_x2);
    Eigen::MatrixXcd pilots(dims.K, dims.T_p);
    for (int k = 0; k < dims.K; ++k) {
        for (int t = 0; t < dims.T_p; ++t) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) *
                                 static_cast<double>(t) / static_cast<double>(dims.K);
            pilots(k, t) = amp * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return pilots;
}

Eigen::MatrixXcd make_pilots(PilotType type, const SystemDims& dims,
                             const Constellation& constellation) {
    return type == PilotType::hadamard ? make_hadamard_pilots(dims, constellation)
                                       : make_dft_pilots(dims, constellation);
}

}  // namespace cfmimo
