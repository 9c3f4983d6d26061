// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sparse.hpp
 * @brief Immutable real symmetric operator in compressed-row form.
 */

#pragma once

#include "hubmetric/error.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace hubmetric {

class SparseOperator {
public:
    SparseOperator() = default;

    /// Takes ownership of CSR arrays; column indices must be sorted within each row.
    SparseOperator(std::size_t dimension, std::vector<std::size_t> row_ptr,
                   std::vector<std::uint32_t> cols, std::vector<double> values)
        : dim_(dimension), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)), values_(std::move(values)) {
        if (row_ptr_.size() != dim_ + 1 || cols_.size() != values_.size() || row_ptr_.back() != cols_.size())
            throw ValidationError("inconsistent CSR arrays");
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
    [[nodiscard]] std::size_t nonzeros() const noexcept { return values_.size(); }

    [[nodiscard]] std::span<const std::uint32_t> row_cols(std::size_t row) const noexcept {
        return {cols_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
    }
    [[nodiscard]] std::span<const double> row_values(std::size_t row) const noexcept {
        return {values_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
    }

    /// Entry (row, col); zero when not stored.
    [[nodiscard]] double at(std::size_t row, std::size_t col) const noexcept {
        const auto c = row_cols(row);
        const auto it = std::lower_bound(c.begin(), c.end(), static_cast<std::uint32_t>(col));
        if (it == c.end() || *it != col) return 0.0;
        return row_values(row)[static_cast<std::size_t>(it - c.begin())];
    }

    /// y = H x
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.resize(static_cast<Eigen::Index>(dim_));
        for (std::size_t r = 0; r < dim_; ++r) {
            double acc = 0.0;
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[cols_[k]];
            y[static_cast<Eigen::Index>(r)] = acc;
        }
    }

    [[nodiscard]] Eigen::VectorXd operator*(const Eigen::VectorXd& x) const {
        Eigen::VectorXd y;
        apply(x, y);
        return y;
    }

    [[nodiscard]] Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
                m(static_cast<Eigen::Index>(r), cols_[k]) = values_[k];
        return m;
    }

    /// Exact (bitwise) symmetry of the stored pattern and values.
    [[nodiscard]] bool is_symmetric() const noexcept {
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k)
                if (at(cols_[k], r) != values_[k]) return false;
        return true;
    }

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

}  // namespace hubmetric
