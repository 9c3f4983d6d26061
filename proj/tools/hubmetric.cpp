// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: solve, sweep, analyze, plot, oracle.
//
// Exit codes: 0 success, 2 usage or validation, 3 solver failure, 4 I/O.

#include "hubmetric/hubmetric.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using namespace hubmetric;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

std::string default_store() {
    const char* env = std::getenv("HUBMETRIC_STORE");
    return env && *env ? env : "store";
}

struct SolveArgs {
    int L = 0;
    int n_up = 0;
    int n_down = 0;
    double U = 0.0;
    double t = 1.0;
    std::string solver = "auto";
    std::string output = "profile.csv";
    std::size_t ed_max_dimension = kDefaultDimensionCap;
    dmrg::DMRGConfig dmrg;
    bool seed_check = false;
    std::uint64_t lanczos_seed = 42;
    int lanczos_max_iter = 2000;
};

int cmd_solve(const SolveArgs& a) {
    const ModelSpec spec{a.L, a.t, a.U, a.n_up, a.n_down};
    SolveSettings settings;
    settings.solver = solver_from_string(a.solver);
    settings.ed_max_dimension = a.ed_max_dimension;
    settings.dmrg = a.dmrg;
    settings.dmrg_seed_check = a.seed_check;
    settings.lanczos.seed = a.lanczos_seed;
    settings.lanczos.max_iter = a.lanczos_max_iter;
    settings.dmrg.validate();
    const auto out = solve(spec, settings);
    fs::path profile_path = a.output;
    fs::path report_path = profile_path;
    report_path.replace_extension(".json");
    io::write_file_atomic(profile_path, to_csv(out.profile));
    io::write_file_atomic(report_path, out.report.dump(2) + "\n");
    std::cout << "solver  " << out.report["solver"].get<std::string>() << "\n"
              << "energy  " << io::format_double(out.report["energy"].get<double>()) << "\n"
              << "flags   " << out.report["flags"].get<std::string>() << "\n"
              << "profile " << profile_path.string() << "\n"
              << "report  " << report_path.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& store_override, int workers) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(io::read_file(config_path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError("sweep config '" + config_path + "' is not valid JSON: " + e.what());
    }
    auto config = sweep_config_from_json(j);
    if (!store_override.empty())
        config.output_dir = store_override;
    else if (!j.contains("output_dir"))
        config.output_dir = default_store();
    if (workers > 0) config.workers = workers;
    ResultsStore store(config.output_dir);
    const auto summary = run_sweep(config, store, [](const std::string& line) { std::cout << line << std::endl; });
    for (const auto& c : summary.contexts) {
        const auto dir = store.root() / context_dirname(c.context.L, c.context.U, c.context.n);
        std::cout << "panel " << dir.string() << "  status " << c.report_json.value("status", std::string("?")) << "\n";
    }
    std::cout << "solved " << summary.solves << ", cached " << summary.cached << ", failed " << summary.failures.size()
              << "\n";
    return summary.failures.empty() ? kExitOk : kExitSolver;
}

int cmd_analyze(const std::string& store_root, int L, double U, double n, double k, int stride,
                const std::string& density) {
    if (L < 1) throw ValidationError("L must be positive");
    const double nl = n * L;
    if (std::abs(nl - std::round(nl)) > 1e-9) throw ValidationError("n = " + io::format_short(n) + " gives non-integer n*L");
    DensityChannel channel = DensityChannel::kTotal;
    if (density == "spin") channel = DensityChannel::kSpinResolved;
    else if (density != "total") throw ValidationError("density must be 'total' or 'spin'");
    if (!fs::exists(fs::path(store_root) / "index.json")) throw IoError("no store index under '" + store_root + "'");
    const ResultsStore store(store_root);
    const auto res = analyze_context(store, L, U, static_cast<int>(std::round(nl)), stride, k, channel);
    std::cout << res.report_json.dump(2) << "\n";
    return res.report_json.value("status", std::string()) == "error" ? kExitUsage : kExitOk;
}

int cmd_oracle(bool with_dmrg) {
    const auto checks = run_oracles(with_dmrg);
    bool all = true;
    std::printf("%-36s %22s %22s %10s  %s\n", "check", "value", "expected", "error", "result");
    for (const auto& c : checks) {
        std::printf("%-36s %22.15g %22.15g %10.2e  %s\n", c.name.c_str(), c.value, c.expected, c.error(),
                    c.passed() ? "PASS" : "FAIL");
        all = all && c.passed();
    }
    std::printf("%s\n", all ? "all checks passed" : "some checks FAILED");
    return all ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hubmetric: density distances of the 1D attractive Hubbard chain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "hubmetric 1.0.0");
    app.failure_message(CLI::FailureMessage::help);

    SolveArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Ground-state densities of one (L, N_up, N_down, U) sector");
    solve_cmd->add_option("-L,--length", sa.L, "Number of sites")->required();
    solve_cmd->add_option("--nup", sa.n_up, "Spin-up particles")->required();
    solve_cmd->add_option("--ndn", sa.n_down, "Spin-down particles")->required();
    solve_cmd->add_option("-U,--interaction", sa.U, "On-site interaction U (negative = attractive)")->required();
    solve_cmd->add_option("-t,--hopping", sa.t, "Hopping amplitude")->capture_default_str();
    solve_cmd->add_option("--solver", sa.solver, "auto | ed | dmrg")->capture_default_str();
    solve_cmd->add_option("-o,--output", sa.output, "Profile CSV path; the report goes next to it as .json")
        ->capture_default_str();
    solve_cmd->add_option("--ed-max-dim", sa.ed_max_dimension, "Largest sector handled by ED in auto mode")
        ->capture_default_str();
    solve_cmd->add_option("--lanczos-seed", sa.lanczos_seed, "Seed of the Lanczos start vector")->capture_default_str();
    solve_cmd->add_option("--lanczos-max-iter", sa.lanczos_max_iter, "Lanczos iteration limit")->capture_default_str();
    solve_cmd->add_option("--m-max", sa.dmrg.m_max, "DMRG bond dimension cap")->capture_default_str();
    solve_cmd->add_option("--cutoff", sa.dmrg.cutoff, "DMRG discarded-weight cutoff")->capture_default_str();
    solve_cmd->add_option("--max-sweeps", sa.dmrg.max_sweeps, "DMRG sweep limit")->capture_default_str();
    solve_cmd->add_option("--energy-tol", sa.dmrg.energy_tol, "DMRG energy convergence between sweeps")
        ->capture_default_str();
    solve_cmd->add_option("--seed", sa.dmrg.seed, "DMRG initial-state seed")->capture_default_str();
    solve_cmd->add_option("--checkpoint", sa.dmrg.checkpoint_path, "Write the DMRG state here after every sweep");
    solve_cmd->add_flag("--seed-check", sa.seed_check, "Rerun DMRG with a second seed to detect degeneracy");

    std::string config_path, sweep_store;
    int sweep_workers = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a polarization sweep from a JSON config");
    sweep_cmd->add_option("config", config_path, "Sweep config (JSON)")->required();
    sweep_cmd->add_option("--store", sweep_store, "Store root (overrides config and HUBMETRIC_STORE)");
    sweep_cmd->add_option("-j,--workers", sweep_workers, "Parallel solves (overrides config)");

    std::string an_store = default_store(), an_density = "total";
    int an_L = 0, an_stride = 1;
    double an_U = 0.0, an_n = 0.0, an_k = 3.0;
    auto* analyze_cmd = app.add_subcommand("analyze", "Build D and dD series and the report from stored profiles");
    analyze_cmd->add_option("--store", an_store, "Store root (default: $HUBMETRIC_STORE or ./store)")
        ->capture_default_str();
    analyze_cmd->add_option("-L,--length", an_L, "Number of sites")->required();
    analyze_cmd->add_option("-U,--interaction", an_U, "On-site interaction U")->required();
    analyze_cmd->add_option("-n,--filling", an_n, "Filling N/L")->required();
    analyze_cmd->add_option("--k", an_k, "Elevation factor over the baseline median")->capture_default_str();
    analyze_cmd->add_option("--stride", an_stride, "Grid stride in units of the minimal imbalance step")
        ->capture_default_str();
    analyze_cmd->add_option("--density", an_density, "total | spin")->capture_default_str();

    PlotSpec ps;
    std::string kind = "D_vs_P", format = "svg", plot_out = "figure.svg";
    auto* plot_cmd = app.add_subcommand("plot", "Emit a figure from series or profile CSV files");
    plot_cmd->add_option("--kind", kind, "D_vs_P | dD_vs_P | D_vs_n | density_profile")->capture_default_str();
    plot_cmd->add_option("inputs", ps.inputs, "Input CSV files")->required();
    plot_cmd->add_option("--label", ps.labels, "Curve label, once per input");
    plot_cmd->add_option("--pc", ps.p_c, "Critical polarization to mark (D_vs_P), once or once per input");
    plot_cmd->add_option("--format", format, "svg | script (CSV data plus matplotlib script)")->capture_default_str();
    plot_cmd->add_option("-o,--output", plot_out, "Output path")->capture_default_str();

    bool no_dmrg = false;
    auto* oracle_cmd = app.add_subcommand("oracle", "Run the analytic and cross-solver checks");
    oracle_cmd->add_flag("--no-dmrg", no_dmrg, "Skip the DMRG checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve_cmd) return cmd_solve(sa);
        if (*sweep_cmd) return cmd_sweep(config_path, sweep_store, sweep_workers);
        if (*analyze_cmd) return cmd_analyze(an_store, an_L, an_U, an_n, an_k, an_stride, an_density);
        if (*plot_cmd) {
            ps.kind = plot_kind_from_string(kind);
            if (format == "svg") ps.format = PlotFormat::kSvg;
            else if (format == "script") ps.format = PlotFormat::kScript;
            else throw ValidationError("format must be 'svg' or 'script'");
            ps.output = plot_out;
            for (const auto& f : emit_plot(ps)) std::cout << "wrote " << f.string() << "\n";
            return kExitOk;
        }
        if (*oracle_cmd) return cmd_oracle(!no_dmrg);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
