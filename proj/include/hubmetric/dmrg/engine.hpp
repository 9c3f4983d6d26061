// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file engine.hpp
 * @brief Finite-system two-site DMRG for the Hubbard chain.
 *
 * Sweeps alternate left-to-right and right-to-left. At each bond the
 * two-site wave function is optimized by Lanczos (seeded with the current
 * tensors), then split by a block-wise SVD keeping at most `m_max` states
 * with discarded weight <= `cutoff`. The sweep order is strictly sequential,
 * so a run is deterministic for a given seed and config.
 */

#pragma once

#include "hubmetric/dmrg/environment.hpp"
#include "hubmetric/dmrg/mpo.hpp"
#include "hubmetric/dmrg/tensor_train.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/lanczos.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace hubmetric::dmrg {

struct DMRGConfig {
    int m_max = 256;
    double cutoff = 1e-9;
    int max_sweeps = 20;
    double energy_tol = 1e-9;
    double eig_tol = 1e-11;
    int max_eig_iter = 300;
    std::uint64_t seed = 42;
    /// Bond-dimension caps for the first sweeps (each clipped to m_max); empty = {64, 128}.
    std::vector<int> warmup_m;
    /// When set, the state is written here after every sweep.
    std::string checkpoint_path;

    void validate() const {
        if (m_max < 8) throw ValidationError("DMRG m_max must be >= 8");
        if (!(cutoff > 0.0 && cutoff < 1.0)) throw ValidationError("DMRG cutoff must lie in (0, 1)");
        if (max_sweeps < 1) throw ValidationError("DMRG max_sweeps must be >= 1");
        if (!(energy_tol > 0.0)) throw ValidationError("DMRG energy_tol must be positive");
        if (!(eig_tol > 0.0)) throw ValidationError("DMRG eig_tol must be positive");
        if (max_eig_iter < 1) throw ValidationError("DMRG max_eig_iter must be >= 1");
    }

    /// Bond-dimension cap used in sweep `sweep` (0-based).
    [[nodiscard]] int m_for_sweep(int sweep) const {
        const std::vector<int> ramp = warmup_m.empty() ? std::vector<int>{64, 128} : warmup_m;
        if (sweep < static_cast<int>(ramp.size())) return std::min(ramp[sweep], m_max);
        return m_max;
    }
};

struct DMRGReport {
    double energy = 0.0;
    int sweeps_used = 0;
    double max_discarded_weight = 0.0;  ///< over the final sweep
    bool converged = false;
    std::vector<int> bond_dims;
    std::vector<double> sweep_energies;
    std::vector<std::vector<double>> bond_energies;  ///< per sweep, per optimized bond, in sweep order
};

struct DMRGResult {
    TensorTrainState state;
    DMRGReport report;
};

// ---------------------------------------------------------------------------
// Two-site wave function layout
// ---------------------------------------------------------------------------

/// Flat storage map of the blocks Theta[a, s1, s2] (left sector a, right sector c).
struct TwoSitePlan {
    struct Block {
        int a, s1, s2, c;
        int rows, cols;
        Eigen::Index offset;
    };

    Bond left, right;
    std::vector<Block> blocks;
    std::vector<int> lookup;  ///< (a*16 + s1*4 + s2) -> block index or -1
    Eigen::Index size = 0;

    TwoSitePlan(const Bond& l, const Bond& r) : left(l), right(r) {
        lookup.assign(static_cast<std::size_t>(left.size()) * 16, -1);
        for (int a = 0; a < left.size(); ++a)
            for (int s1 = 0; s1 < kPhysDim; ++s1)
                for (int s2 = 0; s2 < kPhysDim; ++s2) {
                    const int c = right.find(left.qns[a] + kSiteQN[s1] + kSiteQN[s2]);
                    if (c < 0) continue;
                    lookup[index(a, s1, s2)] = static_cast<int>(blocks.size());
                    blocks.push_back({a, s1, s2, c, left.dims[a], right.dims[c], size});
                    size += static_cast<Eigen::Index>(left.dims[a]) * right.dims[c];
                }
    }

    [[nodiscard]] static std::size_t index(int a, int s1, int s2) noexcept {
        return static_cast<std::size_t>(a) * 16 + static_cast<std::size_t>(s1 * kPhysDim + s2);
    }

    [[nodiscard]] int find(int a, int s1, int s2) const noexcept { return lookup[index(a, s1, s2)]; }
};

/// Contracts two neighbouring site tensors into the flat two-site vector.
[[nodiscard]] inline Eigen::VectorXd merge_sites(const TwoSitePlan& plan, const SiteTensor& A, const SiteTensor& B) {
    Eigen::VectorXd theta = Eigen::VectorXd::Zero(plan.size);
    for (const auto& blk : plan.blocks) {
        const int m = A.target(blk.a, blk.s1);
        if (m < 0) continue;
        if (B.target(m, blk.s2) != blk.c) continue;
        Eigen::Map<Eigen::MatrixXd>(theta.data() + blk.offset, blk.rows, blk.cols).noalias() =
            A.block(blk.a, blk.s1) * B.block(m, blk.s2);
    }
    return theta;
}

/// y = H_eff x for the two-site problem between environments `Lenv` and `Renv`.
class TwoSiteOperator {
public:
    TwoSiteOperator(const TwoSitePlan& plan, const Environment& Lenv, const Environment& Renv, const HubbardMpo& mpo)
        : plan_(plan), L_(Lenv), R_(Renv), mpo_(mpo) {}

    void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.setZero(plan_.size);
        Eigen::MatrixXd T, Z;
        for (const auto& blk : plan_.blocks) {
            const Eigen::Map<const Eigen::MatrixXd> X(x.data() + blk.offset, blk.rows, blk.cols);
            for (int w1 = 0; w1 < kMpoDim; ++w1) {
                if (!L_.has(w1, blk.a)) continue;
                const int ap = L_.bra[w1][blk.a];
                bool computed = false;
                for (int w3 = 0; w3 < kMpoDim; ++w3) {
                    if (!mpo_.has_pair(w1, w3) || !R_.has(w3, blk.c)) continue;
                    const auto& entries = mpo_.pair(w1, w3, blk.s1, blk.s2);
                    if (entries.empty()) continue;
                    if (!computed) {
                        T.noalias() = L_.blocks[w1][blk.a] * X;
                        computed = true;
                    }
                    Z.noalias() = T * R_.blocks[w3][blk.c].transpose();
                    for (const auto& e : entries) {
                        const int k = plan_.find(ap, e.out1, e.out2);
                        if (k < 0) continue;
                        const auto& out = plan_.blocks[k];
                        Eigen::Map<Eigen::MatrixXd>(y.data() + out.offset, out.rows, out.cols) += e.value * Z;
                    }
                }
            }
        }
    }

private:
    const TwoSitePlan& plan_;
    const Environment& L_;
    const Environment& R_;
    const HubbardMpo& mpo_;
};

enum class Direction { kRight, kLeft };

struct SplitResult {
    SiteTensor left;
    SiteTensor right;
    double discarded_weight = 0.0;
};

/// SVD of Theta per middle label, truncated to `m_keep` states / `cutoff`.
/// kRight leaves the singular values on the right tensor, kLeft on the left one.
[[nodiscard]] inline SplitResult split_two_site(const TwoSitePlan& plan, const Eigen::VectorXd& theta, Direction dir,
                                                int m_keep, double cutoff) {
    struct Group {
        std::map<std::pair<int, int>, int> row_off;  // (a, s1) -> row offset
        std::map<std::pair<int, int>, int> col_off;  // (s2, c) -> col offset
        int rows = 0, cols = 0;
        Eigen::MatrixXd M;
        Eigen::MatrixXd U, V;
        Eigen::VectorXd S;
        int keep = 0;
    };
    std::map<QN, Group> groups;
    for (const auto& blk : plan.blocks) {
        const QN mid = plan.left.qns[blk.a] + kSiteQN[blk.s1];
        auto& g = groups[mid];
        if (g.row_off.emplace(std::pair{blk.a, blk.s1}, g.rows).second) g.rows += blk.rows;
        if (g.col_off.emplace(std::pair{blk.s2, blk.c}, g.cols).second) g.cols += blk.cols;
    }
    for (auto& [mid, g] : groups) g.M = Eigen::MatrixXd::Zero(g.rows, g.cols);
    for (const auto& blk : plan.blocks) {
        auto& g = groups[plan.left.qns[blk.a] + kSiteQN[blk.s1]];
        g.M.block(g.row_off[{blk.a, blk.s1}], g.col_off[{blk.s2, blk.c}], blk.rows, blk.cols) =
            Eigen::Map<const Eigen::MatrixXd>(theta.data() + blk.offset, blk.rows, blk.cols);
    }

    struct Sv {
        double value;
        QN mid;
        int index;
    };
    std::vector<Sv> all;
    double total = 0.0;
    for (auto& [mid, g] : groups) {
        Eigen::BDCSVD<Eigen::MatrixXd> svd(g.M, Eigen::ComputeThinU | Eigen::ComputeThinV);
        g.U = svd.matrixU();
        g.V = svd.matrixV();
        g.S = svd.singularValues();
        for (Eigen::Index k = 0; k < g.S.size(); ++k) {
            all.push_back({g.S[k], mid, static_cast<int>(k)});
            total += g.S[k] * g.S[k];
        }
    }
    if (!(total > 0.0)) throw SolverError("two-site wave function vanished");
    std::stable_sort(all.begin(), all.end(), [](const Sv& x, const Sv& y) { return x.value > y.value; });

    // Largest kept count whose discarded tail stays within the cutoff, capped at m_keep.
    std::size_t keep = std::min<std::size_t>(all.size(), static_cast<std::size_t>(m_keep));
    double tail = 0.0;
    for (std::size_t k = keep; k < all.size(); ++k) tail += all[k].value * all[k].value;
    while (keep > 1) {
        const double w = all[keep - 1].value * all[keep - 1].value;
        if ((tail + w) / total > cutoff) break;
        tail += w;
        --keep;
    }
    for (std::size_t k = 0; k < keep; ++k) ++groups[all[k].mid].keep;
    const double kept_norm = std::sqrt(total - tail);

    Bond mid_bond;
    for (auto& [mid, g] : groups)
        if (g.keep > 0) {
            mid_bond.qns.push_back(mid);
            mid_bond.dims.push_back(g.keep);
        }

    SplitResult out{SiteTensor(plan.left, mid_bond), SiteTensor(mid_bond, plan.right), tail / total};
    for (auto& [mid, g] : groups) {
        if (g.keep == 0) continue;
        const int m = mid_bond.find(mid);
        const Eigen::VectorXd s = g.S.head(g.keep) / kept_norm;
        Eigen::MatrixXd Uk = g.U.leftCols(g.keep);
        Eigen::MatrixXd Vt = g.V.leftCols(g.keep).transpose();
        if (dir == Direction::kRight)
            Vt = s.asDiagonal() * Vt;
        else
            Uk = Uk * s.asDiagonal();
        for (const auto& [key, off] : g.row_off) {
            const auto [a, s1] = key;
            out.left.block(a, s1) = Uk.middleRows(off, plan.left.dims[a]);
        }
        for (const auto& [key, off] : g.col_off) {
            const auto [s2, c] = key;
            out.right.block(m, s2) = Vt.middleCols(off, plan.right.dims[c]);
        }
    }
    return out;
}

namespace detail {

inline void check_spec_for_dmrg(const ModelSpec& spec) {
    spec.validate();
    if (spec.L < 4) throw ValidationError("DMRG requires L >= 4 (use exact diagonalization for smaller chains)");
    if (reachable_sectors(spec, spec.L / 2).empty())
        throw ValidationError("empty quantum-number sector for the requested particle numbers");
}

}  // namespace detail

/// Ground state of the Hubbard chain by two-site DMRG. When `initial` is
/// given (e.g. a loaded checkpoint) it replaces the random warm-up state.
[[nodiscard]] inline DMRGResult dmrg_ground_state(const ModelSpec& spec, const DMRGConfig& config,
                                                  const TensorTrainState* initial = nullptr) {
    detail::check_spec_for_dmrg(spec);
    config.validate();
    const int L = spec.L;
    const HubbardMpo mpo(spec);

    TensorTrainState psi;
    if (initial != nullptr) {
        if (initial->spec.L != L || initial->spec.n_up != spec.n_up || initial->spec.n_down != spec.n_down)
            throw ValidationError("initial tensor train belongs to a different sector");
        psi = *initial;
        psi.spec = spec;
        right_canonicalize(psi);
    } else {
        psi = random_tensor_train(spec, config.seed);
    }

    std::vector<Environment> left_env(L + 1), right_env(L + 1);
    left_env[0] = left_boundary(psi.sites[0], mpo);
    right_env[L] = right_boundary(psi.sites[L - 1], mpo);
    for (int i = L - 1; i >= 1; --i) right_env[i] = grow_right(right_env[i + 1], psi.sites[i], mpo);

    DMRGReport report;
    double energy = std::numeric_limits<double>::infinity();
    double previous = std::numeric_limits<double>::infinity();
    int full_m_sweeps = 0;

    auto optimize = [&](int i, Direction dir, int m_cur, double tol, double& discarded, std::vector<double>& energies) {
        const TwoSitePlan plan(psi.sites[i].left(), psi.sites[i + 1].right());
        const TwoSiteOperator H(plan, left_env[i], right_env[i + 2], mpo);
        Eigen::VectorXd theta = merge_sites(plan, psi.sites[i], psi.sites[i + 1]);
        if (!(theta.norm() > 1e-12)) theta = Eigen::VectorXd::Ones(plan.size);
        const LanczosOptions opt{tol, config.max_eig_iter, 64};
        auto res = lanczos_lowest(H, std::move(theta), opt);
        energy = res.value;
        energies.push_back(energy);
        auto split = split_two_site(plan, res.vector, dir, m_cur, config.cutoff);
        discarded = std::max(discarded, split.discarded_weight);
        psi.sites[i] = std::move(split.left);
        psi.sites[i + 1] = std::move(split.right);
    };

    for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
        const int m_cur = config.m_for_sweep(sweep);
        const double tol = m_cur < config.m_max ? std::max(config.eig_tol, 1e-8) : config.eig_tol;
        double discarded = 0.0;
        std::vector<double> energies;
        for (int i = 0; i + 1 < L; ++i) {
            optimize(i, Direction::kRight, m_cur, tol, discarded, energies);
            left_env[i + 1] = grow_left(left_env[i], psi.sites[i], mpo);
        }
        for (int i = L - 2; i >= 0; --i) {
            optimize(i, Direction::kLeft, m_cur, tol, discarded, energies);
            right_env[i + 1] = grow_right(right_env[i + 2], psi.sites[i + 1], mpo);
        }
        psi.center = 0;
        report.sweeps_used = sweep + 1;
        report.sweep_energies.push_back(energy);
        report.bond_energies.push_back(std::move(energies));
        report.max_discarded_weight = discarded;
        if (!config.checkpoint_path.empty()) save_checkpoint(psi, config.checkpoint_path);
        if (m_cur == config.m_max) {
            ++full_m_sweeps;
            if (full_m_sweeps >= 2 && std::abs(energy - previous) <= config.energy_tol) {
                report.converged = true;
                break;
            }
        }
        previous = energy;
    }
    report.energy = energy;
    report.bond_dims = psi.bond_dimensions();
    return {std::move(psi), std::move(report)};
}

}  // namespace hubmetric::dmrg
