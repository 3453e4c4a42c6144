// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the cfmimo authors

#include "cfmimo/constellation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cfmimo {

std::size_t Constellation::nearest(std::complex<double> value) const {
    std::size_t best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const double d2 = std::norm(value - symbols[i]);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

void Constellation::validate() const {
    if (symbols.empty()) throw std::invalid_argument("constellation is empty");
    if (sigma_x2 <= 0.0) throw std::invalid_argument("sigma_x2 must be positive");
    double power = 0.0;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        if (symbols[i] == std::complex<double>(0.0, 0.0))
            throw std::invalid_argument("constellation contains the zero symbol");
        for (std::size_t j = i + 1; j < symbols.size(); ++j)
            if (symbols[i] == symbols[j])
                throw std::invalid_argument("constellation symbols are not distinct");
        power += std::norm(symbols[i]);
    }
    power /= static_cast<double>(symbols.size());
    if (std::abs(power - sigma_x2) > 1e-12 * sigma_x2)
        throw std::invalid_argument("constellation mean power " + std::to_string(power) +
                                    " does not match sigma_x2");
}

Constellation make_qam(std::size_t order, double sigma_x2) {
    const auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(order))));
    if (side * side != order || order < 4)
        throw std::invalid_argument("QAM order must be a square number >= 4");
    if (sigma_x2 <= 0.0) throw std::invalid_argument("sigma_x2 must be positive");

    // Amplitude levels +-1, +-3, ...; average power of the unscaled grid is
    // 2(M-1)/3, so scale by sqrt(3 sigma_x2 / (2(M-1))).
    const double scale = std::sqrt(3.0 * sigma_x2 / (2.0 * (static_cast<double>(order) - 1.0)));
    Constellation c;
    c.sigma_x2 = sigma_x2;
    c.symbols.reserve(order);
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t q = 0; q < side; ++q) {
            const double re = (static_cast<double>(side) - 1.0 - 2.0 * static_cast<double>(i));
            const double im = (static_cast<double>(side) - 1.0 - 2.0 * static_cast<double>(q));
            c.symbols.emplace_back(re * scale, im * scale);
        }
    }
    c.validate();
    return c;
}

}  // namespace cfmimo
