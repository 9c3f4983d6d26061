// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file ed.hpp
 * @brief Exact ground states of a sector: Lanczos and dense reference solver.
 */

#pragma once

#include "hubmetric/basis.hpp"
#include "hubmetric/density.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/lanczos.hpp"
#include "hubmetric/sparse.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace hubmetric {

/// Gaps below this mark the ground level as degenerate.
inline constexpr double kDegeneracyGap = 1e-10;

struct GroundState {
    ModelSpec spec;
    double energy = 0.0;
    Eigen::VectorXd amplitudes;
    double gap = std::numeric_limits<double>::infinity();  ///< E1 - E0
    bool degenerate = false;
    double residual = 0.0;
    int iterations = 0;
};

struct LanczosSettings {
    double tol = 1e-12;
    int max_iter = 2000;
    std::uint64_t seed = 42;
    bool compute_gap = true;
};

namespace detail {

inline Eigen::VectorXd random_vector(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = dist(rng);
    return v;
}

/// Fixes the arbitrary eigenvector sign: largest-magnitude entry positive.
inline void fix_sign(Eigen::VectorXd& v) {
    if (v.size() == 0) return;
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    if (v[k] < 0) v = -v;
}

}  // namespace detail

/// Lowest eigenpair by Lanczos; a second, deflated run supplies the gap.
/// Throws ConvergenceError (carrying the best residual) after max_iter.
[[nodiscard]] inline GroundState lanczos_ground_state(const SparseOperator& H, const ModelSpec& spec,
                                                      const LanczosSettings& settings = {}) {
    const std::size_t dim = H.dimension();
    if (dim == 0) throw ValidationError("empty operator");
    auto apply = [&H](const Eigen::VectorXd& x, Eigen::VectorXd& y) { H.apply(x, y); };
    const LanczosOptions opt{settings.tol, settings.max_iter, 0};

    auto ground = lanczos_lowest(apply, detail::random_vector(dim, settings.seed), opt);
    if (!ground.converged)
        throw ConvergenceError("Lanczos did not converge after " + std::to_string(ground.iterations) +
                                   " iterations (best residual " + std::to_string(ground.residual) + ")",
                               ground.residual);

    GroundState gs;
    gs.spec = spec;
    gs.energy = ground.value;
    gs.amplitudes = std::move(ground.vector);
    detail::fix_sign(gs.amplitudes);
    gs.residual = ground.residual;
    gs.iterations = ground.iterations;
    if (settings.compute_gap && dim > 1) {
        const Eigen::VectorXd deflate[] = {gs.amplitudes};
        const auto excited = lanczos_lowest(apply, detail::random_vector(dim, settings.seed + 1), opt, deflate);
        gs.iterations += excited.iterations;
        gs.gap = excited.value - gs.energy;
        gs.degenerate = gs.gap < kDegeneracyGap;
    }
    return gs;
}

inline constexpr std::size_t kDenseDimensionCap = 4096;

/// Full dense diagonalization; reference oracle for small sectors.
[[nodiscard]] inline GroundState dense_ground_state(const SparseOperator& H, const ModelSpec& spec) {
    const std::size_t dim = H.dimension();
    if (dim == 0) throw ValidationError("empty operator");
    if (dim > kDenseDimensionCap)
        throw DimensionOverflow("dense diagonalization limited to dimension " + std::to_string(kDenseDimensionCap) +
                                ", got " + std::to_string(dim));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.to_dense());
    if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    GroundState gs;
    gs.spec = spec;
    gs.energy = es.eigenvalues()[0];
    gs.amplitudes = es.eigenvectors().col(0);
    detail::fix_sign(gs.amplitudes);
    if (dim > 1) {
        gs.gap = es.eigenvalues()[1] - es.eigenvalues()[0];
        gs.degenerate = gs.gap < kDegeneracyGap;
    }
    Eigen::VectorXd r;
    H.apply(gs.amplitudes, r);
    gs.residual = (r - gs.energy * gs.amplitudes).norm();
    return gs;
}

/// <n_{i,sigma}> from the amplitudes of `state` in `basis`.
[[nodiscard]] inline DensityProfile measure_density(const GroundState& state, const SectorBasis& basis) {
    if (static_cast<std::size_t>(state.amplitudes.size()) != basis.dimension())
        throw ValidationError("state and basis dimensions differ");
    const int L = basis.spec().L;
    const auto& ups = basis.up_configs();
    const auto& downs = basis.down_configs();
    std::vector<double> weight_up(ups.size(), 0.0), weight_down(downs.size(), 0.0);
    for (std::size_t iu = 0; iu < ups.size(); ++iu)
        for (std::size_t id = 0; id < downs.size(); ++id) {
            const double a = state.amplitudes[static_cast<Eigen::Index>(basis.index(iu, id))];
            weight_up[iu] += a * a;
            weight_down[id] += a * a;
        }
    std::vector<double> up(L, 0.0), down(L, 0.0);
    for (std::size_t iu = 0; iu < ups.size(); ++iu)
        for (int i = 0; i < L; ++i)
            if ((ups[iu] >> i) & 1u) up[i] += weight_up[iu];
    for (std::size_t id = 0; id < downs.size(); ++id)
        for (int i = 0; i < L; ++i)
            if ((downs[id] >> i) & 1u) down[i] += weight_down[id];
    return DensityProfile(std::move(up), std::move(down));
}

}  // namespace hubmetric
