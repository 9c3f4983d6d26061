// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file solve.hpp
 * @brief One ground-state density, by exact diagonalization or DMRG.
 */

#pragma once

#include "hubmetric/basis.hpp"
#include "hubmetric/dmrg.hpp"
#include "hubmetric/ed.hpp"
#include "hubmetric/hamiltonian.hpp"
#include "hubmetric/metric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <string>

namespace hubmetric {

enum class SolverKind { kAuto, kExact, kDmrg };

[[nodiscard]] inline std::string to_string(SolverKind k) {
    switch (k) {
        case SolverKind::kExact: return "ed";
        case SolverKind::kDmrg: return "dmrg";
        default: return "auto";
    }
}

[[nodiscard]] inline SolverKind solver_from_string(std::string_view s) {
    if (s == "auto") return SolverKind::kAuto;
    if (s == "ed") return SolverKind::kExact;
    if (s == "dmrg") return SolverKind::kDmrg;
    throw ValidationError("unknown solver '" + std::string(s) + "' (expected auto, ed or dmrg)");
}

/// Densities of two DMRG seeds further apart than this mark a degenerate level.
inline constexpr double kSeedDisagreement = 1e-4;

struct SolveSettings {
    SolverKind solver = SolverKind::kAuto;
    std::size_t ed_max_dimension = kDefaultDimensionCap;
    LanczosSettings lanczos;
    dmrg::DMRGConfig dmrg;
    bool dmrg_seed_check = false;  ///< rerun DMRG with a second seed to detect degeneracy
};

struct SolveOutcome {
    DensityProfile profile;
    nlohmann::json report;
    unsigned flags = kFlagNone;
};

/// Solver actually used for `spec` under `settings`.
[[nodiscard]] inline SolverKind resolve_solver(const ModelSpec& spec, const SolveSettings& settings) {
    if (settings.solver != SolverKind::kAuto) return settings.solver;
    if (spec.L > 64) return SolverKind::kDmrg;
    const auto dim = static_cast<double>(binomial(spec.L, spec.n_up)) * static_cast<double>(binomial(spec.L, spec.n_down));
    return dim <= static_cast<double>(settings.ed_max_dimension) ? SolverKind::kExact : SolverKind::kDmrg;
}

[[nodiscard]] inline SolveOutcome solve(const ModelSpec& spec, const SolveSettings& settings = {}) {
    spec.validate();
    SolveOutcome out;
    nlohmann::json& r = out.report;
    r["L"] = spec.L;
    r["t"] = spec.t;
    r["U"] = spec.U;
    r["n_up"] = spec.n_up;
    r["n_down"] = spec.n_down;
    if (resolve_solver(spec, settings) == SolverKind::kExact) {
        const auto basis = enumerate_basis(spec, settings.ed_max_dimension);
        const auto H = build_hamiltonian(spec, basis);
        const auto gs = lanczos_ground_state(H, spec, settings.lanczos);
        out.profile = measure_density(gs, basis);
        if (gs.degenerate) out.flags |= kFlagDegenerate;
        r["solver"] = "ed";
        r["energy"] = gs.energy;
        r["dimension"] = basis.dimension();
        r["gap"] = std::isfinite(gs.gap) ? nlohmann::json(gs.gap) : nlohmann::json(nullptr);
        r["degenerate"] = gs.degenerate;
        r["residual"] = gs.residual;
        r["iterations"] = gs.iterations;
        r["seed"] = settings.lanczos.seed;
    } else {
        const auto res = dmrg::dmrg_ground_state(spec, settings.dmrg);
        out.profile = dmrg::dmrg_measure_density(res.state);
        if (!res.report.converged) out.flags |= kFlagUnconverged;
        r["solver"] = "dmrg";
        r["energy"] = res.report.energy;
        r["converged"] = res.report.converged;
        r["sweeps"] = res.report.sweeps_used;
        r["max_discarded_weight"] = res.report.max_discarded_weight;
        r["max_bond_dimension"] = *std::max_element(res.report.bond_dims.begin(), res.report.bond_dims.end());
        r["m_max"] = settings.dmrg.m_max;
        r["cutoff"] = settings.dmrg.cutoff;
        r["seed"] = settings.dmrg.seed;
        if (settings.dmrg_seed_check) {
            auto second = settings.dmrg;
            second.seed = settings.dmrg.seed + 7919;
            second.checkpoint_path.clear();
            const auto alt = dmrg::dmrg_ground_state(spec, second);
            const double diff = out.profile.max_abs_diff(dmrg::dmrg_measure_density(alt.state));
            r["seed_check_max_density_diff"] = diff;
            if (diff > kSeedDisagreement) out.flags |= kFlagDegenerate;
            r["degenerate"] = diff > kSeedDisagreement;
        }
    }
    r["flags"] = flags_to_string(out.flags);
    return out;
}

}  // namespace hubmetric
