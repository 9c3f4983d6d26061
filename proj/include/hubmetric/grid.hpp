// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file grid.hpp
 * @brief Polarization grids P = (N_up - N_down) / N with N_up >= N_down.
 *
 * A grid holds every imbalance D = 0, 2s, 4s, ..., N (stride s). It is
 * closed under P -> 1 - P and contains P = 1/2, which together require
 * N divisible by 4s.
 */

#pragma once

#include "hubmetric/error.hpp"

#include <string>
#include <vector>

namespace hubmetric {

struct GridPoint {
    int n_up;
    int n_down;
    double P;
};

struct PolarizationGrid {
    int N = 0;
    std::vector<GridPoint> points;
};

[[nodiscard]] inline PolarizationGrid polarization_grid(int N, int stride = 1) {
    if (N < 2) throw ValidationError("polarization grid needs N >= 2, got " + std::to_string(N));
    if (stride < 1) throw ValidationError("polarization grid stride must be >= 1");
    if (N % 2 != 0)
        throw ValidationError("polarization grid needs even N, got " + std::to_string(N));
    if (N % 4 != 0)
        throw ValidationError("N = " + std::to_string(N) +
                              " is not divisible by 4: the reference polarization P = 0.5 needs an imbalance of N/2 = " +
                              std::to_string(N / 2) + ", which has the wrong parity");
    if (N % (4 * stride) != 0)
        throw ValidationError("grid stride " + std::to_string(stride) + " does not divide N/4 = " +
                              std::to_string(N / 4) + "; P = 0.5 or the P <-> 1-P pairing would be lost");
    PolarizationGrid g;
    g.N = N;
    for (int delta = 0; delta <= N; delta += 2 * stride)
        g.points.push_back({(N + delta) / 2, (N - delta) / 2, static_cast<double>(delta) / N});
    return g;
}

}  // namespace hubmetric
