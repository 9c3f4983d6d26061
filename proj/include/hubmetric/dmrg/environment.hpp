// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file environment.hpp
 * @brief Left/right operator environments of the DMRG sweep.
 *
 * An environment lives on one bond and holds, for each MPO virtual state w
 * and ket sector a, the matrix <bra a'| E_w |ket a> with
 * qn(a') = qn(a) + shift(w). Empty matrices mean zero.
 */

#pragma once

#include "hubmetric/dmrg/mpo.hpp"
#include "hubmetric/dmrg/tensor_train.hpp"

#include <array>
#include <vector>

namespace hubmetric::dmrg {

struct Environment {
    Bond bond;
    std::array<std::vector<Eigen::MatrixXd>, kMpoDim> blocks;
    std::array<std::vector<int>, kMpoDim> bra;  ///< bra sector for (w, ket a), -1 if outside the bond

    Environment() = default;

    Environment(Bond b, const HubbardMpo& mpo) : bond(std::move(b)) {
        for (int w = 0; w < kMpoDim; ++w) {
            blocks[w].resize(bond.size());
            bra[w].resize(bond.size());
            for (int a = 0; a < bond.size(); ++a) bra[w][a] = bond.find(bond.qns[a] + mpo.shift(w));
        }
    }

    [[nodiscard]] bool has(int w, int a) const noexcept { return blocks[w][a].size() > 0; }

    void accumulate(int w, int a, const Eigen::MatrixXd& m, double factor) {
        auto& dst = blocks[w][a];
        if (dst.size() == 0)
            dst = factor * m;
        else
            dst.noalias() += factor * m;
    }
};

/// Environment left of site 0 (virtual state "start", vacuum label).
[[nodiscard]] inline Environment left_boundary(const SiteTensor& first, const HubbardMpo& mpo) {
    Environment e(first.left(), mpo);
    e.blocks[kMpoStart][0] = Eigen::MatrixXd::Identity(1, 1);
    return e;
}

/// Environment right of the last site (virtual state "done", full label).
[[nodiscard]] inline Environment right_boundary(const SiteTensor& last, const HubbardMpo& mpo) {
    Environment e(last.right(), mpo);
    e.blocks[kMpoDone][0] = Eigen::MatrixXd::Identity(1, 1);
    return e;
}

/// Extends `env` (on A's left bond) through site tensor A.
[[nodiscard]] inline Environment grow_left(const Environment& env, const SiteTensor& A, const HubbardMpo& mpo) {
    Environment out(A.right(), mpo);
    const Bond& lb = A.left();
    for (int w1 = 0; w1 < kMpoDim; ++w1)
        for (int a = 0; a < lb.size(); ++a) {
            if (!env.has(w1, a)) continue;
            const int ap = env.bra[w1][a];
            std::array<Eigen::MatrixXd, kPhysDim> T;
            for (int s = 0; s < kPhysDim; ++s)
                if (A.target(a, s) >= 0) T[s].noalias() = env.blocks[w1][a] * A.block(a, s);
            for (const auto& term : mpo.terms()) {
                if (term.w_left != w1) continue;
                for (const auto& e : term.entries) {
                    const int b = A.target(a, e.in);
                    const int bp = A.target(ap, e.out);
                    if (b < 0 || bp < 0) continue;
                    Eigen::MatrixXd m = A.block(ap, e.out).transpose() * T[e.in];
                    out.accumulate(term.w_right, b, m, e.value);
                }
            }
        }
    return out;
}

/// Extends `env` (on B's right bond) through site tensor B.
[[nodiscard]] inline Environment grow_right(const Environment& env, const SiteTensor& B, const HubbardMpo& mpo) {
    Environment out(B.left(), mpo);
    const Bond& lb = B.left();
    for (int w2 = 0; w2 < kMpoDim; ++w2)
        for (int a = 0; a < lb.size(); ++a)
            for (int s = 0; s < kPhysDim; ++s) {
                const int b = B.target(a, s);
                if (b < 0 || !env.has(w2, b)) continue;
                const Eigen::MatrixXd T = env.blocks[w2][b] * B.block(a, s).transpose();  // bra b' x ket a
                for (const auto& term : mpo.terms()) {
                    if (term.w_right != w2) continue;
                    const int ap = out.bra[term.w_left][a];
                    if (ap < 0) continue;
                    for (const auto& e : term.entries) {
                        if (e.in != s) continue;
                        const int bp = B.target(ap, e.out);
                        if (bp != env.bra[w2][b]) continue;
                        Eigen::MatrixXd m = B.block(ap, e.out) * T;
                        out.accumulate(term.w_left, a, m, e.value);
                    }
                }
            }
    return out;
}

}  // namespace hubmetric::dmrg
