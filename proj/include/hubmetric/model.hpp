// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file model.hpp
 * @brief Parameters of the open 1D Hubbard chain
 *
 *   H = -t sum_{i,s} (c+_{i,s} c_{i+1,s} + h.c.) + U sum_i n_{i,up} n_{i,dn}
 *
 * with fixed spin-resolved particle numbers.
 */

#pragma once

#include "hubmetric/error.hpp"

#include <cmath>
#include <string>

namespace hubmetric {

struct ModelSpec {
    int L = 2;           ///< number of sites
    double t = 1.0;      ///< hopping amplitude
    double U = 0.0;      ///< on-site interaction (negative = attractive)
    int n_up = 0;
    int n_down = 0;

    [[nodiscard]] int particles() const noexcept { return n_up + n_down; }

    /// (N_up - N_down) / N; zero for the empty chain.
    [[nodiscard]] double polarization() const noexcept {
        const int n = particles();
        return n > 0 ? static_cast<double>(n_up - n_down) / n : 0.0;
    }

    /// Average density N / L.
    [[nodiscard]] double filling() const noexcept {
        return static_cast<double>(particles()) / L;
    }

    /// Same chain with the two spin species exchanged.
    [[nodiscard]] ModelSpec spin_flipped() const noexcept {
        ModelSpec s = *this;
        s.n_up = n_down;
        s.n_down = n_up;
        return s;
    }

    /// Throws ValidationError unless L >= 2 and 0 <= N_sigma <= L.
    void validate() const {
        if (L < 2) throw ValidationError("chain length L must be >= 2, got " + std::to_string(L));
        if (n_up < 0 || n_up > L)
            throw ValidationError("N_up must lie in [0, L], got " + std::to_string(n_up));
        if (n_down < 0 || n_down > L)
            throw ValidationError("N_down must lie in [0, L], got " + std::to_string(n_down));
        if (!std::isfinite(t) || !std::isfinite(U)) throw ValidationError("t and U must be finite");
    }

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

}  // namespace hubmetric
