// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file oracle.hpp
 * @brief Cross-checks of the solvers against closed forms and against each other.
 */

#pragma once

#include "hubmetric/dmrg.hpp"
#include "hubmetric/ed.hpp"
#include "hubmetric/free_fermion.hpp"
#include "hubmetric/hamiltonian.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace hubmetric {

struct OracleCheck {
    std::string name;
    double value;
    double expected;
    double tolerance;

    [[nodiscard]] double error() const { return std::abs(value - expected); }
    [[nodiscard]] bool passed() const { return std::isfinite(value) && error() <= tolerance; }
};

/// Two-site ground-state energy for one particle of each spin.
[[nodiscard]] inline double dimer_energy(double U, double t = 1.0) { return 0.5 * (U - std::sqrt(U * U + 16.0 * t * t)); }

namespace detail {

inline GroundState ed_solve(const ModelSpec& spec) {
    const auto basis = enumerate_basis(spec);
    return lanczos_ground_state(build_hamiltonian(spec, basis), spec, {});
}

inline DensityProfile ed_density(const ModelSpec& spec) {
    const auto basis = enumerate_basis(spec);
    return measure_density(lanczos_ground_state(build_hamiltonian(spec, basis), spec, {}), basis);
}

/// DMRG settings for oracle comparisons: a truncation tight enough for 1e-8 energies.
inline dmrg::DMRGConfig oracle_dmrg_config() {
    dmrg::DMRGConfig c;
    c.cutoff = 1e-12;
    c.energy_tol = 1e-11;
    return c;
}

}  // namespace detail

/// Runs the oracle suite. Densities are compared by their maximum absolute
/// site difference (value = that difference, expected = 0).
[[nodiscard]] inline std::vector<OracleCheck> run_oracles(bool with_dmrg = true) {
    std::vector<OracleCheck> out;
    for (double U : {-4.0, -8.0}) {
        const ModelSpec s{2, 1.0, U, 1, 1};
        out.push_back({"ED dimer energy U=" + io::format_short(U), detail::ed_solve(s).energy, dimer_energy(U), 1e-8});
    }
    for (auto [nu, nd] : {std::pair{2, 2}, std::pair{3, 1}, std::pair{4, 0}}) {
        const ModelSpec s{8, 1.0, 0.0, nu, nd};
        out.push_back({"ED U=0 energy L=8 " + std::to_string(nu) + "+" + std::to_string(nd), detail::ed_solve(s).energy,
                       free_fermion_energy(8, nu) + free_fermion_energy(8, nd), 1e-8});
    }
    {
        const ModelSpec s{8, 1.0, -4.0, 4, 0};
        out.push_back({"ED P=1 density L=8 N=4", detail::ed_density(s).max_abs_diff(free_fermion_density(8, 4)), 0.0, 1e-6});
    }
    {
        const ModelSpec s{6, 1.0, -4.0, 2, 2};
        const auto basis = enumerate_basis(s);
        const auto H = build_hamiltonian(s, basis);
        out.push_back({"Lanczos vs dense L=6 2+2 U=-4", lanczos_ground_state(H, s, {}).energy,
                       dense_ground_state(H, s).energy, 1e-10});
    }
    if (with_dmrg) {
        const auto cfg = detail::oracle_dmrg_config();
        {
            const ModelSpec s{8, 1.0, 0.0, 2, 2};
            out.push_back({"DMRG U=0 energy L=8 2+2", dmrg::dmrg_ground_state(s, cfg).report.energy,
                           2.0 * free_fermion_energy(8, 2), 1e-8});
        }
        {
            const ModelSpec s{8, 1.0, -4.0, 4, 0};
            const auto res = dmrg::dmrg_ground_state(s, cfg);
            out.push_back({"DMRG P=1 density L=8 N=4",
                           dmrg::dmrg_measure_density(res.state).max_abs_diff(free_fermion_density(8, 4)), 0.0, 1e-6});
        }
        {
            const ModelSpec s{8, 1.0, -4.0, 2, 2};
            out.push_back({"DMRG vs ED L=8 2+2 U=-4", dmrg::dmrg_ground_state(s, cfg).report.energy,
                           detail::ed_solve(s).energy, 1e-8});
        }
    }
    return out;
}

}  // namespace hubmetric
