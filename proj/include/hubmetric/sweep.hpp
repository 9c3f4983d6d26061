// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file sweep.hpp
 * @brief Polarization sweeps over (U, n): scheduling, caching and series output.
 *
 * Config file (JSON, "version": 1):
 *
 *   {
 *     "version": 1,
 *     "L": 40,
 *     "U": [-1, -4],
 *     "n": [0.6],
 *     "solver": "auto",            // auto | ed | dmrg
 *     "ed_max_dimension": 20000000,
 *     "grid_stride": 1,
 *     "reference_P": 0.5,
 *     "k": 3,
 *     "density": "total",          // total | spin
 *     "workers": 1,
 *     "output_dir": "store",
 *     "dmrg": {"m_max": 256, "cutoff": 1e-9, "max_sweeps": 20, "energy_tol": 1e-9,
 *              "eig_tol": 1e-11, "max_eig_iter": 300, "seed": 42, "seed_check": false},
 *     "lanczos": {"tol": 1e-12, "max_iter": 2000, "seed": 42}
 *   }
 *
 * Only "L", "U" and "n" are required.
 */

#pragma once

#include "hubmetric/grid.hpp"
#include "hubmetric/metric.hpp"
#include "hubmetric/solve.hpp"
#include "hubmetric/store.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hubmetric {

inline constexpr int kSweepConfigVersion = 1;

struct SweepConfig {
    int L = 0;
    std::vector<double> U;
    std::vector<double> n;
    SolveSettings solve;
    int grid_stride = 1;
    double reference_P = 0.5;
    double k = 3.0;
    DensityChannel channel = DensityChannel::kTotal;
    int workers = 1;
    std::string output_dir = "store";

    /// Particle number for filling `n_value`; throws naming the offending n.
    [[nodiscard]] int particles_for(double n_value) const {
        const double nl = n_value * L;
        const double rounded = std::round(nl);
        if (std::abs(nl - rounded) > 1e-9 * std::max(1.0, std::abs(nl)))
            throw ValidationError("n = " + io::format_short(n_value) + " gives non-integer n*L = " + io::format_short(nl));
        const int N = static_cast<int>(rounded);
        if (N <= 0 || N > 2 * L)
            throw ValidationError("n = " + io::format_short(n_value) + " gives N = " + std::to_string(N) +
                                  " outside (0, 2L]");
        if (N % 4 != 0)
            throw ValidationError("n = " + io::format_short(n_value) + " gives N = " + std::to_string(N) +
                                  ", not divisible by 4 (P = 0.5 reference unreachable)");
        return N;
    }

    void validate() const {
        if (L < 4) throw ValidationError("sweep needs L >= 4, got " + std::to_string(L));
        if (U.empty()) throw ValidationError("sweep needs at least one U value");
        if (n.empty()) throw ValidationError("sweep needs at least one n value");
        if (workers < 1) throw ValidationError("workers must be >= 1");
        if (std::abs(reference_P - 0.5) > kPolarizationTol)
            throw ValidationError("reference_P other than 0.5 is not supported by the paired grid");
        for (double v : n) (void)polarization_grid(particles_for(v), grid_stride);
        solve.dmrg.validate();
    }
};

[[nodiscard]] inline SweepConfig sweep_config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    try {
        if (j.value("version", kSweepConfigVersion) != kSweepConfigVersion)
            throw ValidationError("unsupported sweep config version");
        c.L = j.at("L").get<int>();
        c.U = j.at("U").get<std::vector<double>>();
        c.n = j.at("n").get<std::vector<double>>();
        c.solve.solver = solver_from_string(j.value("solver", std::string("auto")));
        c.solve.ed_max_dimension = j.value("ed_max_dimension", kDefaultDimensionCap);
        c.grid_stride = j.value("grid_stride", 1);
        c.reference_P = j.value("reference_P", 0.5);
        c.k = j.value("k", 3.0);
        const std::string density = j.value("density", std::string("total"));
        if (density == "total") c.channel = DensityChannel::kTotal;
        else if (density == "spin") c.channel = DensityChannel::kSpinResolved;
        else throw ValidationError("density must be 'total' or 'spin'");
        c.workers = j.value("workers", 1);
        c.output_dir = j.value("output_dir", std::string("store"));
        if (j.contains("dmrg")) {
            const auto& d = j.at("dmrg");
            auto& m = c.solve.dmrg;
            m.m_max = d.value("m_max", m.m_max);
            m.cutoff = d.value("cutoff", m.cutoff);
            m.max_sweeps = d.value("max_sweeps", m.max_sweeps);
            m.energy_tol = d.value("energy_tol", m.energy_tol);
            m.eig_tol = d.value("eig_tol", m.eig_tol);
            m.max_eig_iter = d.value("max_eig_iter", m.max_eig_iter);
            m.seed = d.value("seed", m.seed);
            m.warmup_m = d.value("warmup_m", m.warmup_m);
            c.solve.dmrg_seed_check = d.value("seed_check", false);
        }
        if (j.contains("lanczos")) {
            const auto& l = j.at("lanczos");
            c.solve.lanczos.tol = l.value("tol", c.solve.lanczos.tol);
            c.solve.lanczos.max_iter = l.value("max_iter", c.solve.lanczos.max_iter);
            c.solve.lanczos.seed = l.value("seed", c.solve.lanczos.seed);
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("sweep config: ") + e.what());
    }
    c.validate();
    return c;
}

/// Series, asymmetry and report for one (U, n) panel.
struct ContextResult {
    SeriesContext context;
    std::optional<DistanceSeries> distances;
    std::optional<AsymmetrySeries> asymmetry;
    std::optional<AsymmetryReport> report;
    nlohmann::json report_json;
};

/// Builds series from stored profiles and writes D_series.csv, dD_series.csv
/// and report.json into the panel directory. Missing points count as failed.
inline ContextResult analyze_context(const ResultsStore& store, int L, double U, int N, int grid_stride, double k,
                                     DensityChannel channel = DensityChannel::kTotal,
                                     const std::vector<StoreKey>& failed = {}) {
    const auto grid = polarization_grid(N, grid_stride);
    ContextResult out;
    out.context = {L, U, static_cast<double>(N) / L, 0.5};
    std::vector<SeriesInput> inputs;
    for (const auto& gp : grid.points) {
        const StoreKey key{L, U, gp.n_up, gp.n_down};
        SeriesInput in{gp.P, std::nullopt, kFlagNone};
        const bool known_failed = std::any_of(failed.begin(), failed.end(), [&](const StoreKey& f) {
            return f.n_up == key.n_up && f.n_down == key.n_down && f.U == key.U && f.L == key.L;
        });
        if (!known_failed && store.contains(key)) {
            in.profile = store.load_profile(key);
            in.flags = flags_from_string(store.report(key).value("flags", std::string("ok")));
        } else {
            in.flags = kFlagFailed;
        }
        inputs.push_back(std::move(in));
    }

    const auto dir = store.root() / context_dirname(L, U, out.context.n);
    nlohmann::json rj;
    try {
        out.distances = distance_series(std::move(inputs), out.context, channel);
        out.asymmetry = asymmetry_series(*out.distances);
        io::write_file_atomic(dir / "D_series.csv", to_csv(*out.distances));
        io::write_file_atomic(dir / "dD_series.csv", to_csv(*out.asymmetry));
        try {
            out.report = asymmetry_report(*out.asymmetry, k);
            rj = to_json(*out.report);
        } catch (const ValidationError& e) {
            rj = {{"status", "insufficient_points"}, {"context", context_json(out.context)}, {"message", e.what()}};
        }
    } catch (const ValidationError& e) {
        rj = {{"status", "error"}, {"context", context_json(out.context)}, {"message", e.what()}};
    }
    io::write_file_atomic(dir / "report.json", rj.dump(2) + "\n");
    out.report_json = std::move(rj);
    return out;
}

struct SweepSummary {
    std::vector<ContextResult> contexts;  ///< ordered as (U, n) in the config
    int solves = 0;                       ///< points computed in this run
    int cached = 0;                       ///< points reused from the store
    std::vector<std::pair<StoreKey, std::string>> failures;
};

using ProgressFn = std::function<void(const std::string&)>;

/// Solves every uncached grid point (possibly concurrently), then writes series per (U, n).
inline SweepSummary run_sweep(const SweepConfig& config, ResultsStore& store, const ProgressFn& progress = {}) {
    config.validate();
    SweepSummary summary;
    std::vector<StoreKey> todo;
    for (double U : config.U)
        for (double nv : config.n) {
            const auto grid = polarization_grid(config.particles_for(nv), config.grid_stride);
            for (const auto& gp : grid.points) {
                const StoreKey key{config.L, U, gp.n_up, gp.n_down};
                if (store.has_valid(key))
                    ++summary.cached;
                else
                    todo.push_back(key);
            }
        }

    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const StoreKey& key = todo[i];
            const ModelSpec spec{config.L, 1.0, key.U, key.n_up, key.n_down};
            try {
                const auto result = solve(spec, config.solve);
                store.save(key, result.profile, result.report);
                std::lock_guard lock(mu);
                ++summary.solves;
                if (progress)
                    progress("solved " + key_string(key) + "  E = " + io::format_double(result.report["energy"].get<double>()) +
                             "  [" + result.report["flags"].get<std::string>() + "]");
            } catch (const Error& e) {
                std::lock_guard lock(mu);
                summary.failures.emplace_back(key, e.what());
                if (progress) progress("FAILED " + key_string(key) + ": " + e.what());
            }
        }
    };
    const int nthreads = std::min<int>(config.workers, static_cast<int>(std::max<std::size_t>(todo.size(), 1)));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    }

    std::vector<StoreKey> failed;
    for (const auto& f : summary.failures) failed.push_back(f.first);
    for (double U : config.U)
        for (double nv : config.n)
            summary.contexts.push_back(analyze_context(store, config.L, U, config.particles_for(nv), config.grid_stride,
                                                       config.k, config.channel, failed));
    return summary;
}

}  // namespace hubmetric
