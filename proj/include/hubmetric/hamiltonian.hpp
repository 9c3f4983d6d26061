// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file hamiltonian.hpp
 * @brief Sector-restricted Hubbard Hamiltonian with open boundaries.
 *
 * Fermionic ordering: all spin-up modes before all spin-down modes, each
 * species site-ascending. A hop i <-> j within one species picks up the
 * parity of that species' occupied sites strictly between i and j, which is
 * always even for nearest neighbours but is kept explicit here.
 */

#pragma once

#include "hubmetric/basis.hpp"
#include "hubmetric/sparse.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace hubmetric {

namespace detail {

/// Mask of bits strictly between positions lo < hi.
[[nodiscard]] constexpr Config bits_between(int lo, int hi) noexcept {
    return ((Config{1} << hi) - 1) & ~((Config{1} << (lo + 1)) - 1);
}

struct Hop {
    std::uint32_t target;
    double value;
};

/// Nearest-neighbour hops for every pattern of one species.
inline std::vector<std::vector<Hop>> species_hops(const SectorBasis& basis, const std::vector<Config>& configs,
                                                  double t) {
    const int L = basis.spec().L;
    std::vector<std::vector<Hop>> hops(configs.size());
    if (t == 0.0) return hops;
    for (std::size_t k = 0; k < configs.size(); ++k) {
        const Config c = configs[k];
        for (int i = 0; i + 1 < L; ++i) {
            const Config pair = (Config{1} << i) | (Config{1} << (i + 1));
            const Config occ = c & pair;
            if (occ == 0 || occ == pair) continue;
            const Config moved = c ^ pair;
            const double sign = (std::popcount(c & bits_between(i, i + 1)) & 1) ? -1.0 : 1.0;
            hops[k].push_back({static_cast<std::uint32_t>(basis.rank(moved)), -t * sign});
        }
    }
    return hops;
}

}  // namespace detail

/// Assembles H on `basis`; diagonal U * (number of doubly occupied sites).
[[nodiscard]] inline SparseOperator build_hamiltonian(const ModelSpec& spec, const SectorBasis& basis) {
    if (!(basis.spec() == spec)) throw ValidationError("basis was enumerated for a different model");
    const auto& ups = basis.up_configs();
    const auto& downs = basis.down_configs();
    const auto up_hops = detail::species_hops(basis, ups, spec.t);
    const auto down_hops = detail::species_hops(basis, downs, spec.t);
    const std::size_t nd = downs.size();
    const std::size_t dim = basis.dimension();

    std::vector<std::size_t> row_ptr(dim + 1, 0);
    std::vector<std::uint32_t> cols;
    std::vector<double> values;
    std::vector<std::pair<std::uint32_t, double>> row;
    for (std::size_t iu = 0; iu < ups.size(); ++iu) {
        for (std::size_t id = 0; id < nd; ++id) {
            row.clear();
            const std::size_t r = iu * nd + id;
            const double diag = spec.U * std::popcount(ups[iu] & downs[id]);
            if (diag != 0.0) row.emplace_back(static_cast<std::uint32_t>(r), diag);
            for (const auto& h : up_hops[iu])
                row.emplace_back(static_cast<std::uint32_t>(h.target * nd + id), h.value);
            for (const auto& h : down_hops[id])
                row.emplace_back(static_cast<std::uint32_t>(iu * nd + h.target), h.value);
            std::sort(row.begin(), row.end());
            for (const auto& [c, v] : row) {
                cols.push_back(c);
                values.push_back(v);
            }
            row_ptr[r + 1] = cols.size();
        }
    }
    return SparseOperator(dim, std::move(row_ptr), std::move(cols), std::move(values));
}

}  // namespace hubmetric
