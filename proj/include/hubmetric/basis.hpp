// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file basis.hpp
 * @brief Fock basis of a fixed (N_up, N_down) sector.
 *
 * Each spin species is an L-bit occupation pattern (bit i = site i, LSB is
 * site 0). Patterns of one species are listed in ascending numeric order,
 * which for fixed popcount coincides with colex order, so the position of a
 * pattern is its combinadic rank. Composite index:
 *
 *   index = up_index * |down_configs| + down_index
 */

#pragma once

#include "hubmetric/error.hpp"
#include "hubmetric/model.hpp"

#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hubmetric {

using Config = std::uint64_t;

inline constexpr std::size_t kDefaultDimensionCap = 20'000'000;

/// Binomial coefficient; saturates at SIZE_MAX instead of overflowing.
[[nodiscard]] inline std::size_t binomial(int n, int k) noexcept {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (r > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
    }
    return static_cast<std::size_t>(r);
}

/// All L-bit patterns with popcount k, ascending (Gosper's hack).
[[nodiscard]] inline std::vector<Config> patterns_with_popcount(int L, int k) {
    std::vector<Config> out;
    out.reserve(binomial(L, k));
    if (k == 0) {
        out.push_back(0);
        return out;
    }
    const Config limit = (L == 64) ? 0 : (Config{1} << L);
    Config x = (k == 64) ? ~Config{0} : ((Config{1} << k) - 1);
    while (true) {
        out.push_back(x);
        const Config c = x & (~x + 1);
        const Config r = x + c;
        if (r == 0) break;  // carried out of the 64-bit word
        const Config next = (((r ^ x) >> 2) / c) | r;
        if (limit != 0 && next >= limit) break;
        if (next <= x) break;
        x = next;
    }
    return out;
}

class SectorBasis {
public:
    SectorBasis(ModelSpec spec, std::vector<Config> up, std::vector<Config> down)
        : spec_(spec), up_(std::move(up)), down_(std::move(down)) {
        build_rank_table();
    }

    [[nodiscard]] const ModelSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const std::vector<Config>& up_configs() const noexcept { return up_; }
    [[nodiscard]] const std::vector<Config>& down_configs() const noexcept { return down_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return up_.size() * down_.size(); }

    [[nodiscard]] std::size_t index(std::size_t up_index, std::size_t down_index) const noexcept {
        return up_index * down_.size() + down_index;
    }

    /// Position of a pattern within its species list (combinadic rank).
    [[nodiscard]] std::size_t rank(Config c) const noexcept {
        std::size_t r = 0;
        int j = 0;
        while (c != 0) {
            const int pos = std::countr_zero(c);
            r += choose_[pos][j + 1];
            ++j;
            c &= c - 1;
        }
        return r;
    }

    [[nodiscard]] std::size_t index_of(Config up, Config down) const noexcept {
        return index(rank(up), rank(down));
    }

    [[nodiscard]] Config up_of(std::size_t index) const noexcept { return up_[index / down_.size()]; }
    [[nodiscard]] Config down_of(std::size_t index) const noexcept { return down_[index % down_.size()]; }

private:
    void build_rank_table() {
        const int L = spec_.L;
        choose_.assign(L + 1, std::vector<std::size_t>(L + 2, 0));
        for (int n = 0; n <= L; ++n)
            for (int k = 0; k <= L + 1; ++k) choose_[n][k] = binomial(n, k);
    }

    ModelSpec spec_;
    std::vector<Config> up_;
    std::vector<Config> down_;
    std::vector<std::vector<std::size_t>> choose_;
};

/// Enumerates the (N_up, N_down) sector; throws DimensionOverflow above `cap`.
[[nodiscard]] inline SectorBasis enumerate_basis(const ModelSpec& spec,
                                                 std::size_t cap = kDefaultDimensionCap) {
    spec.validate();
    if (spec.L > 64)
        throw DimensionOverflow("exact diagonalization supports L <= 64 (got L=" + std::to_string(spec.L) +
                                "); use DMRG instead");
    const std::size_t nu = binomial(spec.L, spec.n_up);
    const std::size_t nd = binomial(spec.L, spec.n_down);
    const unsigned __int128 dim = static_cast<unsigned __int128>(nu) * nd;
    if (dim > cap)
        throw DimensionOverflow("sector dimension " + std::to_string(static_cast<double>(dim)) +
                                " exceeds cap " + std::to_string(cap) + "; use DMRG instead");
    return SectorBasis(spec, patterns_with_popcount(spec.L, spec.n_up),
                       patterns_with_popcount(spec.L, spec.n_down));
}

}  // namespace hubmetric
