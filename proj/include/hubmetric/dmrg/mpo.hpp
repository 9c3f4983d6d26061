// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file mpo.hpp
 * @brief Hubbard chain as a bond-dimension-6 matrix product operator.
 *
 * Virtual states: 0 = nothing placed yet, 5 = term completed, 1..4 = a hop
 * opened on the left by c+_up F, c+_dn F, F c_up, F c_dn respectively and
 * closed on the right by c_up, c_dn, c+_up, c+_dn. Each virtual state shifts
 * the bra labels relative to the ket labels by a fixed amount (`shift`).
 */

#pragma once

#include "hubmetric/dmrg/quantum_number.hpp"
#include "hubmetric/model.hpp"

#include <array>
#include <vector>

namespace hubmetric::dmrg {

inline constexpr int kMpoDim = 6;
inline constexpr int kMpoStart = 0;
inline constexpr int kMpoDone = 5;

struct MpoTerm {
    int w_left;
    int w_right;
    std::vector<OpEntry> entries;  ///< coefficient folded in
};

/// Contribution of a composite (w1 -> w3) transition across two sites.
struct PairEntry {
    int out1, out2;
    double value;
};

class HubbardMpo {
public:
    explicit HubbardMpo(const ModelSpec& spec) {
        using namespace ops;
        const LocalOp F = parity();
        const LocalOp cu_dag = create_up(), cd_dag = create_down();
        const LocalOp cu = cu_dag.transpose(), cd = cd_dag.transpose();
        const double t = spec.t;
        add(0, 0, identity());
        add(5, 5, identity());
        if (spec.U != 0.0) add(0, 5, spec.U * double_occupancy());
        if (t != 0.0) {
            add(0, 1, -t * (cu_dag * F));
            add(1, 5, cu);
            add(0, 2, -t * (cd_dag * F));
            add(2, 5, cd);
            add(0, 3, -t * (F * cu));
            add(3, 5, cu_dag);
            add(0, 4, -t * (F * cd));
            add(4, 5, cd_dag);
        }
        shift_ = {QN{0, 0}, QN{1, 0}, QN{0, 1}, QN{-1, 0}, QN{0, -1}, QN{0, 0}};
        build_pairs();
    }

    [[nodiscard]] const std::vector<MpoTerm>& terms() const noexcept { return terms_; }

    /// bra label - ket label on a bond carrying virtual state w.
    [[nodiscard]] QN shift(int w) const noexcept { return shift_[w]; }

    /// Two-site action for (w1, w3, s1, s2): list of (s1', s2', value).
    [[nodiscard]] const std::vector<PairEntry>& pair(int w1, int w3, int s1, int s2) const noexcept {
        return pairs_[((w1 * kMpoDim + w3) * kPhysDim + s1) * kPhysDim + s2];
    }

    [[nodiscard]] bool has_pair(int w1, int w3) const noexcept { return pair_used_[w1 * kMpoDim + w3]; }

private:
    void add(int wl, int wr, const LocalOp& op) { terms_.push_back({wl, wr, nonzeros(op)}); }

    void build_pairs() {
        pairs_.assign(kMpoDim * kMpoDim * kPhysDim * kPhysDim, {});
        pair_used_.fill(false);
        for (const auto& t1 : terms_)
            for (const auto& t2 : terms_) {
                if (t1.w_right != t2.w_left) continue;
                for (const auto& e1 : t1.entries)
                    for (const auto& e2 : t2.entries) {
                        auto& list = pairs_[((t1.w_left * kMpoDim + t2.w_right) * kPhysDim + e1.in) * kPhysDim + e2.in];
                        bool merged = false;
                        for (auto& p : list)
                            if (p.out1 == e1.out && p.out2 == e2.out) {
                                p.value += e1.value * e2.value;
                                merged = true;
                            }
                        if (!merged) list.push_back({e1.out, e2.out, e1.value * e2.value});
                        pair_used_[t1.w_left * kMpoDim + t2.w_right] = true;
                    }
            }
    }

    std::vector<MpoTerm> terms_;
    std::array<QN, kMpoDim> shift_{};
    std::vector<std::vector<PairEntry>> pairs_;
    std::array<bool, kMpoDim * kMpoDim> pair_used_{};
};

}  // namespace hubmetric::dmrg
