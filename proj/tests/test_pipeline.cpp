// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubmetric/free_fermion.hpp"
#include "hubmetric/plot.hpp"
#include "hubmetric/store.hpp"
#include "hubmetric/sweep.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <set>

namespace fs = std::filesystem;
using namespace hubmetric;

namespace {

class TempDir {
public:
    explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("hubmetric_" + name)) {
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

SweepConfig mini_config(const fs::path& root, std::vector<double> U = {-4.0}) {
    SweepConfig c;
    c.L = 8;
    c.U = std::move(U);
    c.n = {0.5};
    c.output_dir = root.string();
    return c;
}

int count(const std::string& haystack, const std::string& needle) {
    int n = 0;
    for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(Store, KeyLayout) {
    EXPECT_EQ(context_dirname(40, -4.0, 0.6), "L40_U-4_n0.6");
    EXPECT_EQ(key_string({40, -4.0, 18, 6}), "L40_U-4_n0.6/Nup18_Ndn6");
}

TEST(Store, SaveLoadSaveIsByteIdentical) {
    TempDir dir("store_roundtrip");
    ResultsStore store(dir.path());
    const StoreKey key{4, -8.0, 1, 0};
    const auto p = free_fermion_density(4, 1);
    store.save(key, p, {{"energy", -1.6}});
    const auto file = dir.path() / (key_string(key) + ".csv");
    const std::string first = io::read_file(file);
    const auto loaded = store.load_profile(key);
    EXPECT_EQ(loaded, p);
    store.save(key, loaded, {{"energy", -1.6}});
    EXPECT_EQ(io::read_file(file), first);
    const double expect[] = {0.138197, 0.361803, 0.361803, 0.138197};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(loaded.total[i], expect[i], 1e-6);
}

TEST(Store, IndexPersistsAcrossInstances) {
    TempDir dir("store_reopen");
    const StoreKey key{8, -1.0, 2, 2};
    {
        ResultsStore store(dir.path());
        store.save(key, free_fermion_density(8, 4), {{"flags", "ok"}});
    }
    const ResultsStore reopened(dir.path());
    EXPECT_TRUE(reopened.has_valid(key));
    EXPECT_EQ(reopened.report(key)["flags"], "ok");
    EXPECT_FALSE(reopened.contains({8, -1.0, 3, 1}));
    for (const auto& entry : fs::recursive_directory_iterator(dir.path()))
        EXPECT_NE(entry.path().extension(), ".tmp") << entry.path();
}

TEST(Store, CorruptedProfileFailsChecksum) {
    TempDir dir("store_corrupt");
    ResultsStore store(dir.path());
    const StoreKey key{4, -8.0, 1, 0};
    store.save(key, free_fermion_density(4, 1), {});
    const auto file = dir.path() / (key_string(key) + ".csv");
    std::string bytes = io::read_file(file);
    bytes[bytes.size() - 3] = bytes[bytes.size() - 3] == '1' ? '2' : '1';
    io::write_file_atomic(file, bytes);
    EXPECT_FALSE(store.has_valid(key));
    EXPECT_THROW((void)store.load_profile(key), ChecksumError);
    EXPECT_THROW((void)store.load_profile({4, -8.0, 0, 1}), IoError);
}

TEST(Store, CorruptIndexRejected) {
    TempDir dir("store_bad_index");
    io::write_file_atomic(dir.path() / "index.json", "{not json");
    EXPECT_THROW(ResultsStore{dir.path()}, IoError);
}

TEST(Store, CachedProfileMatchesFreshSolve) {
    TempDir dir("store_coherence");
    ResultsStore store(dir.path());
    const ModelSpec spec{8, 1.0, -4.0, 3, 1};
    const StoreKey key{8, -4.0, 3, 1};
    store.save(key, solve(spec).profile, {});
    const std::string fresh = to_csv(solve(spec).profile);
    EXPECT_EQ(store.find(key)->at("crc32").get<std::uint32_t>(), io::crc32(fresh));
}

TEST(SweepConfig, ParsesAndValidates) {
    const auto c = sweep_config_from_json(nlohmann::json::parse(
        R"({"version": 1, "L": 40, "U": [-1, -4], "n": [0.6], "solver": "dmrg", "dmrg": {"m_max": 128}})"));
    EXPECT_EQ(c.L, 40);
    EXPECT_EQ(c.U.size(), 2u);
    EXPECT_EQ(c.solve.solver, SolverKind::kDmrg);
    EXPECT_EQ(c.solve.dmrg.m_max, 128);
    EXPECT_EQ(c.particles_for(0.6), 24);
}

TEST(SweepConfig, RejectsNonIntegerFilling) {
    try {
        (void)sweep_config_from_json(nlohmann::json::parse(R"({"L": 10, "U": [-1], "n": [0.55]})"));
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("n = 0.55"), std::string::npos) << e.what();
    }
    EXPECT_THROW((void)sweep_config_from_json(nlohmann::json::parse(R"({"L": 10, "U": [-1], "n": [0.6]})")),
                 ValidationError);
    EXPECT_THROW((void)sweep_config_from_json(nlohmann::json::parse(R"({"L": 2, "U": [-1], "n": [1.0]})")),
                 ValidationError);
    EXPECT_THROW((void)sweep_config_from_json(nlohmann::json::parse(R"({"U": [-1], "n": [0.5]})")), ValidationError);
}

TEST(Sweep, MiniSweepMatchesGoldenFixture) {
    TempDir dir("sweep_golden");
    ResultsStore store(dir.path());
    const auto summary = run_sweep(mini_config(dir.path()), store);
    EXPECT_EQ(summary.solves, 3);
    EXPECT_TRUE(summary.failures.empty());
    const auto panel = dir.path() / "L8_U-4_n0.5";
    for (const char* f : {"D_series.csv", "dD_series.csv", "report.json"}) EXPECT_TRUE(fs::exists(panel / f)) << f;

    const auto golden = distance_series_from_csv(io::read_file(fs::path(HUBMETRIC_FIXTURE_DIR) / "L8_U-4_n0.5" / "D_series.csv"));
    const auto got = distance_series_from_csv(io::read_file(panel / "D_series.csv"));
    ASSERT_EQ(got.points.size(), golden.points.size());
    for (std::size_t k = 0; k < got.points.size(); ++k) {
        EXPECT_EQ(got.points[k].P, golden.points[k].P);
        EXPECT_NEAR(got.points[k].D, golden.points[k].D, 1e-10);
        EXPECT_EQ(got.points[k].flags, golden.points[k].flags);
    }
    // Three grid points leave too few interior points for a report.
    EXPECT_EQ(summary.contexts.at(0).report_json["status"], "insufficient_points");
}

TEST(Sweep, RerunPerformsNoSolves) {
    TempDir dir("sweep_idempotent");
    ResultsStore store(dir.path());
    (void)run_sweep(mini_config(dir.path()), store);
    ResultsStore reopened(dir.path());
    const auto again = run_sweep(mini_config(dir.path()), reopened);
    EXPECT_EQ(again.solves, 0);
    EXPECT_EQ(again.cached, 3);
}

TEST(Sweep, ResumeComputesOnlyMissingPoints) {
    TempDir dir("sweep_resume");
    {
        ResultsStore store(dir.path());
        (void)run_sweep(mini_config(dir.path()), store);
    }
    fs::remove(dir.path() / "L8_U-4_n0.5" / "Nup3_Ndn1.csv");
    ResultsStore store(dir.path());
    const auto summary = run_sweep(mini_config(dir.path(), {-4.0, -1.0}), store);
    EXPECT_EQ(summary.solves, 4);
    EXPECT_EQ(summary.cached, 2);
}

TEST(Sweep, DeterministicAcrossRunsAndWorkerCounts) {
    TempDir a("sweep_det_a"), b("sweep_det_b");
    auto ca = mini_config(a.path(), {-4.0, -1.0});
    auto cb = mini_config(b.path(), {-4.0, -1.0});
    cb.workers = 3;
    ResultsStore sa(a.path()), sb(b.path());
    (void)run_sweep(ca, sa);
    (void)run_sweep(cb, sb);
    for (const char* panel : {"L8_U-4_n0.5", "L8_U-1_n0.5"})
        for (const char* f : {"D_series.csv", "dD_series.csv", "report.json", "Nup2_Ndn2.csv", "Nup4_Ndn0.csv"})
            EXPECT_EQ(io::read_file(a.path() / panel / f), io::read_file(b.path() / panel / f)) << panel << "/" << f;
    EXPECT_EQ(io::read_file(a.path() / "index.json"), io::read_file(b.path() / "index.json"));
}

TEST(Sweep, FailedPointsAreFlaggedAndSweepContinues) {
    TempDir dir("sweep_failure");
    auto c = mini_config(dir.path());
    c.solve.lanczos.max_iter = 2;
    ResultsStore store(dir.path());
    const auto summary = run_sweep(c, store);
    EXPECT_EQ(summary.failures.size(), 3u);
    EXPECT_EQ(summary.solves, 0);
    const auto report = nlohmann::json::parse(io::read_file(dir.path() / "L8_U-4_n0.5" / "report.json"));
    EXPECT_EQ(report["status"], "error");
}

TEST(Plot, ReferenceOnlySeriesGivesSinglePoint) {
    TempDir dir("plot_single");
    io::write_file_atomic(dir.path() / "D_series.csv", "P,D,flags\n0.5,0,ok\n");
    PlotSpec spec;
    spec.inputs = {dir.path() / "D_series.csv"};
    spec.output = dir.path() / "fig.svg";
    const auto fig = build_figure(spec);
    ASSERT_EQ(fig.curves.size(), 1u);
    ASSERT_EQ(fig.curves[0].points.size(), 1u);
    EXPECT_EQ(fig.curves[0].points[0], (std::pair{0.5, 0.0}));
    (void)emit_plot(spec);
    const auto svg = io::read_file(spec.output);
    EXPECT_EQ(count(svg, "<circle"), 1);
    EXPECT_EQ(count(svg, "<polyline"), 0);
}

TEST(Plot, AllZeroAsymmetryIsFlat) {
    TempDir dir("plot_flat");
    io::write_file_atomic(dir.path() / "dD_series.csv", "P,dD,flags\n0,0,ok\n0.25,0,ok\n0.5,0,ok\n");
    PlotSpec spec;
    spec.kind = PlotKind::kAsymmetryVsP;
    spec.inputs = {dir.path() / "dD_series.csv"};
    spec.output = dir.path() / "fig.svg";
    (void)emit_plot(spec);
    const auto svg = io::read_file(spec.output);
    const auto start = svg.find("points=\"") + 8;
    const auto pts = svg.substr(start, svg.find('"', start) - start);
    std::set<std::string> ys;
    for (auto p : io::split(pts, ' ')) ys.insert(std::string(p.substr(p.find(',') + 1)));
    EXPECT_EQ(ys.size(), 1u) << pts;
}

TEST(Plot, DeterministicWithMarker) {
    TempDir dir("plot_det");
    io::write_file_atomic(dir.path() / "L8_U-4_n0.5" / "D_series.csv", "P,D,flags\n0,0.2,ok\n0.5,0,ok\n1,0.1,ok\n");
    PlotSpec spec;
    spec.inputs = {dir.path() / "L8_U-4_n0.5" / "D_series.csv"};
    spec.p_c = {0.8};
    spec.output = dir.path() / "a.svg";
    (void)emit_plot(spec);
    spec.output = dir.path() / "b.svg";
    (void)emit_plot(spec);
    const auto svg = io::read_file(dir.path() / "a.svg");
    EXPECT_EQ(svg, io::read_file(dir.path() / "b.svg"));
    EXPECT_EQ(count(svg, "width=\"10\" height=\"10\""), 1);
    EXPECT_NE(svg.find("L8_U-4_n0.5"), std::string::npos);
}

TEST(Plot, DistanceVersusFillingReadsPanelNames) {
    TempDir dir("plot_filling");
    io::write_file_atomic(dir.path() / "L40_U-4_n0.6" / "D_series.csv", "P,D,flags\n0,0.2,ok\n0.5,0,ok\n1,0.1,ok\n");
    io::write_file_atomic(dir.path() / "L40_U-4_n0.5" / "D_series.csv", "P,D,flags\n0,0.3,ok\n0.5,0,ok\n1,0.15,ok\n");
    PlotSpec spec;
    spec.kind = PlotKind::kDistanceVsFilling;
    spec.inputs = {dir.path() / "L40_U-4_n0.6" / "D_series.csv", dir.path() / "L40_U-4_n0.5" / "D_series.csv"};
    const auto fig = build_figure(spec);
    ASSERT_EQ(fig.curves.size(), 2u);
    EXPECT_EQ(fig.curves[0].points, (std::vector<std::pair<double, double>>{{0.5, 0.3}, {0.6, 0.2}}));
    EXPECT_EQ(fig.curves[1].points, (std::vector<std::pair<double, double>>{{0.5, 0.15}, {0.6, 0.1}}));
    spec.inputs = {dir.path() / "D_series.csv"};
    io::write_file_atomic(spec.inputs[0], "P,D,flags\n0.5,0,ok\n");
    EXPECT_THROW((void)build_figure(spec), ValidationError);
}

TEST(Plot, ScriptModeWritesDataAndScript) {
    TempDir dir("plot_script");
    io::write_file_atomic(dir.path() / "profile.csv", to_csv(free_fermion_density(4, 1)));
    PlotSpec spec;
    spec.kind = PlotKind::kDensityProfile;
    spec.format = PlotFormat::kScript;
    spec.inputs = {dir.path() / "profile.csv"};
    spec.output = dir.path() / "fig.svg";
    const auto files = emit_plot(spec);
    ASSERT_EQ(files.size(), 2u);
    EXPECT_TRUE(fs::exists(dir.path() / "fig.csv"));
    EXPECT_TRUE(fs::exists(dir.path() / "fig.py"));
    EXPECT_NE(io::read_file(dir.path() / "fig.py").find("fig.csv"), std::string::npos);
}

TEST(Plot, MissingInputIsIoError) {
    PlotSpec spec;
    spec.inputs = {"/nonexistent/D_series.csv"};
    EXPECT_THROW((void)build_figure(spec), IoError);
    spec.inputs.clear();
    EXPECT_THROW((void)build_figure(spec), ValidationError);
}
