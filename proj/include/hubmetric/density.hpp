// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file density.hpp
 * @brief Per-site occupations and their CSV form.
 *
 * CSV layout: header `site,n_up,n_down,n_total`, sites 1-indexed, every value
 * printed with 17 significant digits so that save/load is bit-exact.
 */

#pragma once

#include "hubmetric/error.hpp"
#include "hubmetric/io.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace hubmetric {

struct DensityProfile {
    std::vector<double> up;
    std::vector<double> down;
    std::vector<double> total;

    DensityProfile() = default;

    /// Builds total = up + down.
    DensityProfile(std::vector<double> up_, std::vector<double> down_) : up(std::move(up_)), down(std::move(down_)) {
        if (up.size() != down.size()) throw ValidationError("spin-resolved profiles differ in length");
        total.resize(up.size());
        for (std::size_t i = 0; i < up.size(); ++i) total[i] = up[i] + down[i];
    }

    [[nodiscard]] int sites() const noexcept { return static_cast<int>(total.size()); }
    [[nodiscard]] double particles() const noexcept { return std::accumulate(total.begin(), total.end(), 0.0); }
    [[nodiscard]] double particles_up() const noexcept { return std::accumulate(up.begin(), up.end(), 0.0); }
    [[nodiscard]] double particles_down() const noexcept { return std::accumulate(down.begin(), down.end(), 0.0); }

    [[nodiscard]] double max_abs_diff(const DensityProfile& other) const {
        if (other.sites() != sites()) throw ValidationError("profiles differ in length");
        double m = 0.0;
        for (std::size_t i = 0; i < total.size(); ++i) {
            m = std::max(m, std::abs(up[i] - other.up[i]));
            m = std::max(m, std::abs(down[i] - other.down[i]));
            m = std::max(m, std::abs(total[i] - other.total[i]));
        }
        return m;
    }

    /// Largest |total[i] - total[L-1-i]|.
    [[nodiscard]] double reflection_asymmetry() const noexcept {
        double m = 0.0;
        const std::size_t n = total.size();
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(total[i] - total[n - 1 - i]));
        return m;
    }

    friend bool operator==(const DensityProfile&, const DensityProfile&) = default;
};

[[nodiscard]] inline std::string to_csv(const DensityProfile& p) {
    std::string out = "site,n_up,n_down,n_total\n";
    for (int i = 0; i < p.sites(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += io::format_double(p.up[i]);
        out += ',';
        out += io::format_double(p.down[i]);
        out += ',';
        out += io::format_double(p.total[i]);
        out += '\n';
    }
    return out;
}

[[nodiscard]] inline DensityProfile profile_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || io::trim(line) != "site,n_up,n_down,n_total")
        throw IoError("density CSV: missing header `site,n_up,n_down,n_total`");
    DensityProfile p;
    int expected_site = 1;
    while (std::getline(in, line)) {
        if (io::trim(line).empty()) continue;
        const auto fields = io::split(io::trim(line), ',');
        if (fields.size() != 4) throw IoError("density CSV: expected 4 columns in line '" + line + "'");
        if (io::parse_int(fields[0]) != expected_site)
            throw IoError("density CSV: sites must be consecutive from 1");
        ++expected_site;
        p.up.push_back(io::parse_double(fields[1]));
        p.down.push_back(io::parse_double(fields[2]));
        p.total.push_back(io::parse_double(fields[3]));
    }
    return p;
}

}  // namespace hubmetric
