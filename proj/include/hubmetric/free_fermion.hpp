// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file free_fermion.hpp
 * @brief Closed-form results for the non-interacting open chain.
 *
 * Orbitals: phi_k(i) = sqrt(2/(L+1)) sin(k i pi/(L+1)),
 * energies  eps_k    = -2 t cos(k pi/(L+1)),  k, i = 1..L.
 */

#pragma once

#include "hubmetric/density.hpp"
#include "hubmetric/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace hubmetric {

/// Ascending single-particle energies of the open chain.
[[nodiscard]] inline std::vector<double> single_particle_energies(int L, double t = 1.0) {
    if (L < 1) throw ValidationError("single_particle_energies: L must be >= 1");
    std::vector<double> e(L);
    for (int k = 1; k <= L; ++k) e[k - 1] = -2.0 * t * std::cos(k * std::numbers::pi / (L + 1));
    std::sort(e.begin(), e.end());
    return e;
}

/// Sum of the n lowest single-particle energies.
[[nodiscard]] inline double free_fermion_energy(int L, int n, double t = 1.0) {
    const auto e = single_particle_energies(L, t);
    if (n < 0 || n > L) throw ValidationError("free_fermion_energy: need 0 <= n <= L");
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += e[k];
    return s;
}

/// N spinless fermions in the lowest orbitals (t > 0), all in the up channel.
[[nodiscard]] inline DensityProfile free_fermion_density(int L, int n) {
    if (L < 1 || n < 0 || n > L) throw ValidationError("free_fermion_density: need 0 <= N <= L");
    std::vector<double> up(L, 0.0);
    const double norm = 2.0 / (L + 1);
    for (int i = 1; i <= L; ++i) {
        double acc = 0.0;
        for (int k = 1; k <= n; ++k) {
            const double s = std::sin(k * i * std::numbers::pi / (L + 1));
            acc += norm * s * s;
        }
        up[i - 1] = acc;
    }
    return DensityProfile(std::move(up), std::vector<double>(L, 0.0));
}

}  // namespace hubmetric
