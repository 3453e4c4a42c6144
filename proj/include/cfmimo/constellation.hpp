// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#ifndef CFMIMO_CONSTELLATION_HPP
#define CFMIMO_CONSTELLATION_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace cfmimo {

/// Transmit symbol alphabet. Symbols are indexed; detection ties are broken
/// towards the lowest index, so the ordering is part of the contract.
struct Constellation {
    std::vector<std::complex<double>> symbols;
    double sigma_x2 = 1.0;  // average symbol power, linear watts

    std::size_t size() const { return symbols.size(); }

    // Nearest symbol in Euclidean distance, lowest index on ties.
    std::size_t nearest(std::complex<double> value) const;

    // Checks the construction invariants: mean power equals sigma_x2,
    // symbols distinct, none zero. Throws std::invalid_argument.
    void validate() const;
};

// Square M-QAM (M = 4, 16, 64, ...) scaled to average power sigma_x2.
// For M = 4 the symbols are (+-1 +-j) * sqrt(sigma_x2 / 2).
Constellation make_qam(std::size_t order, double sigma_x2);

}  // namespace cfmimo

#endif
