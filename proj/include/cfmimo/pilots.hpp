// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_PILOTS_HPP
#define CFMIMO_PILOTS_HPP

#include <Eigen/Dense>

#include "cfmimo/constellation.hpp"
#include "cfmimo/scenario.hpp"

namespace cfmimo {

// Row k is row (k mod T_p) of the T_p x T_p Hadamard matrix, scaled so every
// entry has squared magnitude sigma_x2. Requires T_p a power of two, T_p <= K.
Eigen::MatrixXcd make_hadamard_pilots(const SystemDims& dims, const Constellation& constellation);

// Entry (k,t) = sqrt(sigma_x2) * exp(-j 2 pi k t / K): the K x K DFT matrix
// truncated to its first T_p columns. Non-orthogonal rows when T_p < K.
Eigen::MatrixXcd make_dft_pilots(const SystemDims& dims, const Constellation& constellation);

Eigen::MatrixXcd make_pilots(PilotType type, const SystemDims& dims,
                             const Constellation& constellation);

}  // namespace cfmimo

#endif
