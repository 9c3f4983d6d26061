// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file measure.hpp
 * @brief Site densities of a tensor-train state.
 */

#pragma once

#include "hubmetric/density.hpp"
#include "hubmetric/dmrg/tensor_train.hpp"
#include "hubmetric/error.hpp"

#include <string>
#include <vector>

namespace hubmetric::dmrg {

/// <n_{i,up}>, <n_{i,dn}> via overlap environments from both ends.
/// Throws SolverError if the state is not in mixed-canonical form.
[[nodiscard]] inline DensityProfile dmrg_measure_density(const TensorTrainState& psi, double canonical_tol = 1e-10) {
    if (!psi.is_canonical(canonical_tol))
        throw SolverError("tensor train is not in canonical form (error " + std::to_string(psi.canonical_error()) + ")");
    const int L = psi.length();

    // left[i][a]: overlap of sites 0..i-1 on bond i; right[i][a]: sites i..L-1.
    std::vector<std::vector<Eigen::MatrixXd>> left(L + 1), right(L + 1);
    left[0] = {Eigen::MatrixXd::Identity(1, 1)};
    for (int i = 0; i < L; ++i) {
        const auto& A = psi.sites[i];
        left[i + 1].assign(A.right().size(), Eigen::MatrixXd());
        for (int b = 0; b < A.right().size(); ++b)
            left[i + 1][b] = Eigen::MatrixXd::Zero(A.right().dims[b], A.right().dims[b]);
        for (int a = 0; a < A.left().size(); ++a)
            for (int s = 0; s < kPhysDim; ++s) {
                const int b = A.target(a, s);
                if (b >= 0) left[i + 1][b].noalias() += A.block(a, s).transpose() * left[i][a] * A.block(a, s);
            }
    }
    right[L] = {Eigen::MatrixXd::Identity(1, 1)};
    for (int i = L - 1; i >= 0; --i) {
        const auto& A = psi.sites[i];
        right[i].assign(A.left().size(), Eigen::MatrixXd());
        for (int a = 0; a < A.left().size(); ++a) {
            right[i][a] = Eigen::MatrixXd::Zero(A.left().dims[a], A.left().dims[a]);
            for (int s = 0; s < kPhysDim; ++s) {
                const int b = A.target(a, s);
                if (b >= 0) right[i][a].noalias() += A.block(a, s) * right[i + 1][b] * A.block(a, s).transpose();
            }
        }
    }
    const double norm = left[L][0](0, 0);

    std::vector<double> up(L, 0.0), down(L, 0.0);
    for (int i = 0; i < L; ++i) {
        const auto& A = psi.sites[i];
        for (int a = 0; a < A.left().size(); ++a)
            for (int s = 1; s < kPhysDim; ++s) {
                const int b = A.target(a, s);
                if (b < 0) continue;
                const double w = (A.block(a, s).transpose() * left[i][a] * A.block(a, s)).cwiseProduct(right[i + 1][b]).sum();
                if (kSiteQN[s].up) up[i] += w;
                if (kSiteQN[s].dn) down[i] += w;
            }
        up[i] /= norm;
        down[i] /= norm;
    }
    return DensityProfile(std::move(up), std::move(down));
}

}  // namespace hubmetric::dmrg
