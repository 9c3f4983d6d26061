// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file quantum_number.hpp
 * @brief U(1)xU(1) labels, bond sector lists and the 4-state site basis.
 *
 * Site basis: |0>, |up>, |dn>, |up dn> = c+_up c+_dn |0>. Modes are ordered
 * site-major (site i up, site i down, site i+1 up, ...), so the on-site
 * down operator carries the string (-1)^{n_up}.
 */

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <compare>
#include <vector>

namespace hubmetric::dmrg {

struct QN {
    int up = 0;
    int dn = 0;

    friend constexpr QN operator+(QN a, QN b) noexcept { return {a.up + b.up, a.dn + b.dn}; }
    friend constexpr QN operator-(QN a, QN b) noexcept { return {a.up - b.up, a.dn - b.dn}; }
    friend constexpr auto operator<=>(const QN&, const QN&) = default;
};

inline constexpr int kPhysDim = 4;
inline constexpr std::array<QN, kPhysDim> kSiteQN{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

/// Ordered list of symmetry sectors on one bond.
struct Bond {
    std::vector<QN> qns;  // strictly ascending
    std::vector<int> dims;

    [[nodiscard]] int size() const noexcept { return static_cast<int>(qns.size()); }

    [[nodiscard]] int find(QN q) const noexcept {
        const auto it = std::lower_bound(qns.begin(), qns.end(), q);
        if (it == qns.end() || *it != q) return -1;
        return static_cast<int>(it - qns.begin());
    }

    [[nodiscard]] int total() const noexcept {
        int s = 0;
        for (int d : dims) s += d;
        return s;
    }

    friend bool operator==(const Bond&, const Bond&) = default;
};

using LocalOp = Eigen::Matrix4d;

namespace ops {

inline LocalOp identity() { return LocalOp::Identity(); }

inline LocalOp create_up() {
    LocalOp m = LocalOp::Zero();
    m(1, 0) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

inline LocalOp create_down() {
    LocalOp m = LocalOp::Zero();
    m(2, 0) = 1.0;
    m(3, 1) = -1.0;
    return m;
}

inline LocalOp parity() { return Eigen::Vector4d(1.0, -1.0, -1.0, 1.0).asDiagonal(); }
inline LocalOp number_up() { return Eigen::Vector4d(0.0, 1.0, 0.0, 1.0).asDiagonal(); }
inline LocalOp number_down() { return Eigen::Vector4d(0.0, 0.0, 1.0, 1.0).asDiagonal(); }
inline LocalOp double_occupancy() { return Eigen::Vector4d(0.0, 0.0, 0.0, 1.0).asDiagonal(); }

}  // namespace ops

/// Nonzero element <out|op|in> of a local operator.
struct OpEntry {
    int out;
    int in;
    double value;
};

[[nodiscard]] inline std::vector<OpEntry> nonzeros(const LocalOp& op) {
    std::vector<OpEntry> e;
    for (int o = 0; o < kPhysDim; ++o)
        for (int i = 0; i < kPhysDim; ++i)
            if (op(o, i) != 0.0) e.push_back({o, i, op(o, i)});
    return e;
}

}  // namespace hubmetric::dmrg
