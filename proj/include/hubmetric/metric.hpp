// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file metric.hpp
 * @brief Density distance and the polarization series built from it.
 *
 *   D(rho1, rho2) = 1/(2N) sum_i |rho1(i) - rho2(i)|          in [0, 1]
 *   D(P)          = D(rho_P, rho_ref),  rho_ref = rho at the reference P
 *   dD(P)         = |D(1 - P) - D(P)|
 *
 * The lattice sum uses unit spacing, which keeps the [0, 1] bound exact.
 */

#pragma once

#include "hubmetric/density.hpp"
#include "hubmetric/error.hpp"
#include "hubmetric/io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace hubmetric {

/// Per-point markers; any nonzero flag excludes the point from dD.
enum PointFlag : unsigned {
    kFlagNone = 0,
    kFlagDegenerate = 1u << 0,
    kFlagUnconverged = 1u << 1,
    kFlagFailed = 1u << 2,
    kFlagReference = 1u << 3,  ///< the reference profile itself is flagged
};

[[nodiscard]] inline std::string flags_to_string(unsigned f) {
    if (f == kFlagNone) return "ok";
    std::string s;
    auto add = [&](unsigned bit, const char* name) {
        if (!(f & bit)) return;
        if (!s.empty()) s += '|';
        s += name;
    };
    add(kFlagDegenerate, "degenerate");
    add(kFlagUnconverged, "unconverged");
    add(kFlagFailed, "failed");
    add(kFlagReference, "reference");
    return s;
}

[[nodiscard]] inline unsigned flags_from_string(std::string_view s) {
    s = io::trim(s);
    if (s == "ok" || s.empty()) return kFlagNone;
    unsigned f = 0;
    for (auto part : io::split(s, '|')) {
        if (part == "degenerate") f |= kFlagDegenerate;
        else if (part == "unconverged") f |= kFlagUnconverged;
        else if (part == "failed") f |= kFlagFailed;
        else if (part == "reference") f |= kFlagReference;
        else throw IoError("unknown flag '" + std::string(part) + "'");
    }
    return f;
}

enum class DensityChannel {
    kTotal,         ///< rho = n_up + n_down (default)
    kSpinResolved,  ///< sum of |d n_up| + |d n_down|
};

/// Tolerance on particle-number agreement between compared profiles.
inline constexpr double kParticleNumberTol = 1e-8;

[[nodiscard]] inline double density_distance(const DensityProfile& a, const DensityProfile& b,
                                             DensityChannel channel = DensityChannel::kTotal) {
    if (a.sites() != b.sites())
        throw ValidationError("density_distance: profiles have different lengths (" + std::to_string(a.sites()) +
                              " vs " + std::to_string(b.sites()) + ")");
    const double na = a.particles();
    const double nb = b.particles();
    if (std::abs(na - nb) > kParticleNumberTol)
        throw ValidationError("density_distance: particle numbers differ (" + io::format_short(na) + " vs " +
                              io::format_short(nb) + ")");
    if (!(na > 0.0)) throw ValidationError("density_distance: particle number must be positive");
    double sum = 0.0;
    if (channel == DensityChannel::kTotal) {
        for (int i = 0; i < a.sites(); ++i) sum += std::abs(a.total[i] - b.total[i]);
    } else {
        for (int i = 0; i < a.sites(); ++i) sum += std::abs(a.up[i] - b.up[i]) + std::abs(a.down[i] - b.down[i]);
    }
    return sum / (na + nb);  // 2N, symmetric in (a, b)
}

struct SeriesContext {
    int L = 0;
    double U = 0.0;
    double n = 0.0;
    double reference_P = 0.5;
};

inline constexpr double kPolarizationTol = 1e-12;

/// One polarization point fed to distance_series; `profile` is empty for failed solves.
struct SeriesInput {
    double P = 0.0;
    std::optional<DensityProfile> profile;
    unsigned flags = kFlagNone;
};

struct DistancePoint {
    double P;
    double D;
    unsigned flags;
};

struct DistanceSeries {
    SeriesContext context;
    std::vector<DistancePoint> points;
};

[[nodiscard]] inline DistanceSeries distance_series(std::vector<SeriesInput> inputs, SeriesContext context,
                                                    DensityChannel channel = DensityChannel::kTotal) {
    std::sort(inputs.begin(), inputs.end(), [](const auto& x, const auto& y) { return x.P < y.P; });
    for (std::size_t k = 1; k < inputs.size(); ++k)
        if (!(inputs[k].P > inputs[k - 1].P)) throw ValidationError("distance_series: duplicate polarization");
    const auto ref = std::find_if(inputs.begin(), inputs.end(), [&](const SeriesInput& in) {
        return std::abs(in.P - context.reference_P) <= kPolarizationTol;
    });
    if (ref == inputs.end() || !ref->profile)
        throw ValidationError("distance_series: no reference profile at P = " + io::format_short(context.reference_P));
    const unsigned ref_flags = ref->flags != kFlagNone ? kFlagReference : kFlagNone;

    DistanceSeries out{context, {}};
    for (const auto& in : inputs) {
        DistancePoint p{in.P, std::numeric_limits<double>::quiet_NaN(), in.flags | ref_flags};
        if (in.profile)
            p.D = density_distance(*in.profile, *ref->profile, channel);
        else
            p.flags |= kFlagFailed;
        out.points.push_back(p);
    }
    return out;
}

struct AsymmetryPoint {
    double P;
    double dD;  ///< NaN when either partner is flagged
    unsigned flags;
};

struct AsymmetrySeries {
    SeriesContext context;
    std::vector<AsymmetryPoint> points;
};

/// dD(P) for every P <= 1/2 of the series; throws if some 1 - P is missing.
[[nodiscard]] inline AsymmetrySeries asymmetry_series(const DistanceSeries& series) {
    AsymmetrySeries out{series.context, {}};
    for (const auto& p : series.points) {
        if (p.P > 0.5 + kPolarizationTol) continue;
        const auto partner = std::find_if(series.points.begin(), series.points.end(), [&](const DistancePoint& q) {
            return std::abs(q.P - (1.0 - p.P)) <= kPolarizationTol;
        });
        if (partner == series.points.end())
            throw ValidationError("asymmetry_series: unpairable grid, P = " + io::format_short(p.P) +
                                  " has no partner at 1 - P");
        const unsigned flags = p.flags | partner->flags;
        const double dD = flags == kFlagNone ? std::abs(partner->D - p.D) : std::numeric_limits<double>::quiet_NaN();
        out.points.push_back({p.P, dD, flags});
    }
    return out;
}

struct AsymmetryReport {
    SeriesContext context;
    double k = 3.0;
    double window_lo = 0.1;
    double window_hi = 0.4;
    double p_c_max = 1.0 / 3.0;
    double baseline = 0.0;       ///< median dD over the interior window
    double edge_P = 0.0;         ///< smallest nonzero usable P
    double edge_value = 0.0;     ///< dD at edge_P
    std::optional<double> p0_value;  ///< dD at P = 0, reported separately
    std::vector<double> elevated;    ///< P in (0, p_c_max] with dD > k * baseline
};

inline constexpr int kMinInteriorPoints = 5;

/// Descriptive summary of an asymmetry series. Interior points are the
/// unflagged ones with 0 < P < 1/2; at least five are required.
[[nodiscard]] inline AsymmetryReport asymmetry_report(const AsymmetrySeries& series, double k = 3.0) {
    if (!(k > 0.0)) throw ValidationError("asymmetry_report: k must be positive");
    AsymmetryReport r;
    r.context = series.context;
    r.k = k;
    std::vector<AsymmetryPoint> interior;
    for (const auto& p : series.points) {
        if (p.flags != kFlagNone) continue;
        if (p.P <= kPolarizationTol) r.p0_value = p.dD;
        else if (p.P < 0.5 - kPolarizationTol) interior.push_back(p);
    }
    if (static_cast<int>(interior.size()) < kMinInteriorPoints)
        throw ValidationError("asymmetry_report: too few points (" + std::to_string(interior.size()) +
                              " usable interior points, need " + std::to_string(kMinInteriorPoints) + ")");
    std::sort(interior.begin(), interior.end(), [](const auto& x, const auto& y) { return x.P < y.P; });

    std::vector<double> window;
    for (const auto& p : interior)
        if (p.P >= r.window_lo - kPolarizationTol && p.P <= r.window_hi + kPolarizationTol) window.push_back(p.dD);
    if (window.empty()) throw ValidationError("asymmetry_report: too few points inside the baseline window");
    std::sort(window.begin(), window.end());
    const std::size_t m = window.size();
    r.baseline = (m % 2 == 1) ? window[m / 2] : 0.5 * (window[m / 2 - 1] + window[m / 2]);

    r.edge_P = interior.front().P;
    r.edge_value = interior.front().dD;
    for (const auto& p : interior)
        if (p.P <= r.p_c_max + kPolarizationTol && p.dD > k * r.baseline) r.elevated.push_back(p.P);
    return r;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

[[nodiscard]] inline std::string to_csv(const DistanceSeries& s) {
    std::string out = "P,D,flags\n";
    for (const auto& p : s.points)
        out += io::format_double(p.P) + ',' + io::format_double(p.D) + ',' + flags_to_string(p.flags) + '\n';
    return out;
}

[[nodiscard]] inline std::string to_csv(const AsymmetrySeries& s) {
    std::string out = "P,dD,flags\n";
    for (const auto& p : s.points)
        out += io::format_double(p.P) + ',' + io::format_double(p.dD) + ',' + flags_to_string(p.flags) + '\n';
    return out;
}

namespace detail {

struct SeriesRow {
    double P;
    double value;
    unsigned flags;
};

inline std::vector<SeriesRow> parse_series_csv(std::string_view text, std::string_view header) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || io::trim(line) != header)
        throw IoError("series CSV: expected header '" + std::string(header) + "'");
    std::vector<SeriesRow> rows;
    while (std::getline(in, line)) {
        if (io::trim(line).empty()) continue;
        const auto f = io::split(io::trim(line), ',');
        if (f.size() != 3) throw IoError("series CSV: expected 3 columns in '" + line + "'");
        rows.push_back({io::parse_double(f[0]), io::parse_double(f[1]), flags_from_string(f[2])});
    }
    return rows;
}

}  // namespace detail

[[nodiscard]] inline DistanceSeries distance_series_from_csv(std::string_view text, SeriesContext context = {}) {
    DistanceSeries s{context, {}};
    for (const auto& r : detail::parse_series_csv(text, "P,D,flags")) s.points.push_back({r.P, r.value, r.flags});
    return s;
}

[[nodiscard]] inline AsymmetrySeries asymmetry_series_from_csv(std::string_view text, SeriesContext context = {}) {
    AsymmetrySeries s{context, {}};
    for (const auto& r : detail::parse_series_csv(text, "P,dD,flags")) s.points.push_back({r.P, r.value, r.flags});
    return s;
}

[[nodiscard]] inline nlohmann::json context_json(const SeriesContext& c) {
    return {{"L", c.L}, {"U", c.U}, {"n", c.n}, {"reference_P", c.reference_P}};
}

[[nodiscard]] inline nlohmann::json to_json(const AsymmetryReport& r) {
    nlohmann::json j;
    j["status"] = "ok";
    j["context"] = context_json(r.context);
    j["k"] = r.k;
    j["baseline_window"] = {r.window_lo, r.window_hi};
    j["baseline"] = r.baseline;
    j["edge_P"] = r.edge_P;
    j["edge_value"] = r.edge_value;
    j["p0_value"] = r.p0_value ? nlohmann::json(*r.p0_value) : nlohmann::json(nullptr);
    j["p_c_max"] = r.p_c_max;
    j["elevated"] = r.elevated;
    return j;
}

}  // namespace hubmetric
