// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lanczos.hpp
 * @brief Lanczos iteration for the lowest eigenpair of a real symmetric operator.
 *
 * Full reorthogonalization (two Gram-Schmidt passes) against every stored
 * Krylov vector and against an optional set of deflation vectors. The
 * operator is any callable `apply(const VectorXd& x, VectorXd& y)` computing
 * y = A x. When the Krylov basis would exceed `max_basis` vectors the
 * iteration restarts from the current Ritz vector.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace hubmetric {

struct LanczosOptions {
    double tol = 1e-12;         ///< target for ||A x - theta x||
    int max_iter = 2000;        ///< operator applications, summed over restarts
    std::size_t max_basis = 0;  ///< Krylov vectors kept; 0 = derive from a 1 GiB budget
};

struct LanczosResult {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = std::numeric_limits<double>::infinity();
    double second_ritz = std::numeric_limits<double>::infinity();
    int iterations = 0;
    bool converged = false;
};

namespace detail {

inline void orthogonalize(Eigen::VectorXd& w, std::span<const Eigen::VectorXd> basis) {
    for (const auto& u : basis) w -= u.dot(w) * u;
}

}  // namespace detail

template <class Apply>
[[nodiscard]] LanczosResult lanczos_lowest(Apply&& apply, Eigen::VectorXd start, const LanczosOptions& opt,
                                           std::span<const Eigen::VectorXd> deflate = {}) {
    const auto dim = static_cast<std::size_t>(start.size());
    LanczosResult best;
    if (dim == 0) return best;

    std::size_t cap = opt.max_basis;
    if (cap == 0) cap = std::max<std::size_t>(40, (std::size_t{1} << 27) / std::max<std::size_t>(dim, 1));
    cap = std::clamp<std::size_t>(cap, 2, dim + 1);

    Eigen::VectorXd x = std::move(start);
    Eigen::VectorXd w(static_cast<Eigen::Index>(dim));
    std::vector<Eigen::VectorXd> V;
    std::vector<double> alpha, beta;

    while (best.iterations < opt.max_iter) {
        detail::orthogonalize(x, deflate);
        detail::orthogonalize(x, deflate);
        const double xn = x.norm();
        if (xn == 0.0 || !std::isfinite(xn)) break;
        x /= xn;

        V.clear();
        alpha.clear();
        beta.clear();
        V.push_back(x);
        bool restart = false;
        while (!restart) {
            const std::size_t j = V.size() - 1;
            apply(V[j], w);
            ++best.iterations;
            const double a = V[j].dot(w);
            alpha.push_back(a);
            w -= a * V[j];
            if (j > 0) w -= beta[j - 1] * V[j - 1];
            for (int pass = 0; pass < 2; ++pass) {
                detail::orthogonalize(w, deflate);
                detail::orthogonalize(w, V);
            }
            const double b = w.norm();

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
            Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(alpha.size()));
            Eigen::VectorXd e = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
            tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
            const Eigen::VectorXd y = tri.eigenvectors().col(0);
            const double theta = tri.eigenvalues()[0];
            const double estimate = b * std::abs(y[y.size() - 1]);
            const double scale = std::max(1.0, std::abs(theta));
            const bool breakdown = b <= 1e-14 * scale || V.size() >= dim - std::min(dim, deflate.size());
            const bool full = V.size() >= cap;
            const bool out_of_budget = best.iterations >= opt.max_iter;

            if (estimate <= opt.tol || breakdown || full || out_of_budget) {
                Eigen::VectorXd ritz = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
                for (std::size_t k = 0; k < V.size(); ++k) ritz += y[static_cast<Eigen::Index>(k)] * V[k];
                ritz.normalize();
                apply(ritz, w);
                ++best.iterations;
                const double rq = ritz.dot(w);
                const double residual = (w - rq * ritz).norm();
                if (residual < best.residual) {
                    best.residual = residual;
                    best.value = rq;
                    best.vector = ritz;
                    best.second_ritz = tri.eigenvalues().size() > 1 ? tri.eigenvalues()[1]
                                                                    : std::numeric_limits<double>::infinity();
                }
                if (residual <= opt.tol) {
                    best.converged = true;
                    return best;
                }
                x = std::move(ritz);
                restart = true;
                continue;
            }
            beta.push_back(b);
            V.push_back(w / b);
        }
    }
    return best;
}

}  // namespace hubmetric
