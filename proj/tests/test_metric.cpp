// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubmetric/ed.hpp"
#include "hubmetric/grid.hpp"
#include "hubmetric/hamiltonian.hpp"
#include "hubmetric/metric.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <random>

using namespace hubmetric;

namespace {

// Random nonnegative spin-resolved profile on L sites with exactly N particles.
DensityProfile random_profile(std::mt19937_64& rng, int L, double N) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> up(L), dn(L);
    double s = 0.0;
    for (int i = 0; i < L; ++i) s += (up[i] = u(rng)) + (dn[i] = u(rng));
    for (int i = 0; i < L; ++i) up[i] *= N / s, dn[i] *= N / s;
    return DensityProfile(std::move(up), std::move(dn));
}

DensityProfile totals(std::vector<double> t) { return DensityProfile(std::move(t), std::vector<double>(t.size(), 0.0)); }

DensityProfile ed_density(const ModelSpec& s) {
    const auto basis = enumerate_basis(s);
    return measure_density(lanczos_ground_state(build_hamiltonian(s, basis), s, {}), basis);
}

DistanceSeries series_of(std::vector<std::pair<double, double>> pd) {
    DistanceSeries s;
    for (auto [P, D] : pd) s.points.push_back({P, D, kFlagNone});
    return s;
}

AsymmetrySeries flat_asymmetry(const std::vector<double>& Ps, double v) {
    AsymmetrySeries s;
    for (double P : Ps) s.points.push_back({P, v, kFlagNone});
    return s;
}

std::vector<double> half_grid(int N) {
    std::vector<double> Ps;
    for (const auto& g : polarization_grid(N).points)
        if (g.P <= 0.5) Ps.push_back(g.P);
    return Ps;
}

}  // namespace

TEST(Distance, Examples) {
    const auto a = totals({1.0, 1.0});
    EXPECT_EQ(density_distance(a, a), 0.0);
    EXPECT_DOUBLE_EQ(density_distance(totals({2.0, 0.0}), totals({0.0, 2.0})), 1.0);
    EXPECT_DOUBLE_EQ(density_distance(a, totals({1.5, 0.5})), 0.25);
}

TEST(Distance, RejectsMismatchedInputs) {
    EXPECT_THROW((void)density_distance(totals({1.0, 1.0}), totals({1.0, 1.0, 0.0})), ValidationError);
    EXPECT_THROW((void)density_distance(totals({1.0, 1.0}), totals({1.0, 0.5})), ValidationError);
    EXPECT_THROW((void)density_distance(totals({0.0, 0.0}), totals({0.0, 0.0})), ValidationError);
}

TEST(Distance, MetricAxiomsOnRandomProfiles) {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<int> len(2, 40);
    for (int trial = 0; trial < 1000; ++trial) {
        const int L = len(rng);
        const double N = std::uniform_real_distribution<double>(0.5, 2.0 * L)(rng);
        const auto a = random_profile(rng, L, N), b = random_profile(rng, L, N), c = random_profile(rng, L, N);
        for (auto ch : {DensityChannel::kTotal, DensityChannel::kSpinResolved}) {
            const double ab = density_distance(a, b, ch), ba = density_distance(b, a, ch);
            const double bc = density_distance(b, c, ch), ac = density_distance(a, c, ch);
            ASSERT_GE(ab, 0.0);
            ASSERT_EQ(ab, ba);
            ASSERT_LE(ac, ab + bc + 1e-12);
            ASSERT_LE(ab, 1.0);
            ASSERT_EQ(density_distance(a, a, ch), 0.0);
            if (a.max_abs_diff(b) > 1e-12) ASSERT_GT(ab, 0.0);
        }
    }
}

TEST(Distance, ScaleConsistency) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_profile(rng, 12, 5.0), b = random_profile(rng, 12, 5.0);
        std::vector<double> au, ad, bu, bd;
        for (int i = 0; i < 12; ++i) {
            au.push_back(2 * a.up[i]), ad.push_back(2 * a.down[i]);
            bu.push_back(2 * b.up[i]), bd.push_back(2 * b.down[i]);
        }
        EXPECT_NEAR(density_distance(DensityProfile(au, ad), DensityProfile(bu, bd)), density_distance(a, b), 1e-14);
    }
}

TEST(Distance, SpinExchangeGivesZero) {
    for (int L = 2; L <= 6; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd < nu; ++nd) {
                const ModelSpec s{L, 1.0, -4.0, nu, nd};
                const auto basis = enumerate_basis(s);
                const auto gs = lanczos_ground_state(build_hamiltonian(s, basis), s, {});
                if (gs.degenerate) continue;
                EXPECT_LE(density_distance(ed_density(s), ed_density(s.spin_flipped())), 1e-10)
                    << "L=" << L << " " << nu << "+" << nd;
            }
}

TEST(Series, ReferencePointIsExactlyZero) {
    std::vector<SeriesInput> in;
    for (const auto& g : polarization_grid(4).points) in.push_back({g.P, ed_density({8, 1.0, -4.0, g.n_up, g.n_down}), 0});
    const auto s = distance_series(in, {8, -4.0, 0.5, 0.5});
    ASSERT_EQ(s.points.size(), 3u);
    for (std::size_t k = 1; k < s.points.size(); ++k) EXPECT_GT(s.points[k].P, s.points[k - 1].P);
    for (const auto& p : s.points) {
        if (p.P == 0.5) EXPECT_EQ(p.D, 0.0);
        EXPECT_GE(p.D, 0.0);
        EXPECT_LE(p.D, 1.0);
    }
}

TEST(Series, IdenticalProfilesGiveEqualDistances) {
    const auto ref = totals({1.0, 1.0, 1.0, 1.0});
    const auto other = totals({1.5, 0.5, 0.5, 1.5});
    const auto s = distance_series({{0.0, other, 0}, {0.5, ref, 0}, {1.0, other, 0}}, {4, -1.0, 1.0});
    EXPECT_EQ(s.points[0].D, s.points[2].D);
}

TEST(Series, FlagsPropagate) {
    const auto ref = totals({1.0, 1.0});
    const auto s = distance_series({{0.0, std::nullopt, 0}, {0.5, ref, kFlagDegenerate}, {1.0, ref, 0}}, {2, -1.0, 1.0});
    EXPECT_TRUE(std::isnan(s.points[0].D));
    EXPECT_TRUE(s.points[0].flags & kFlagFailed);
    for (const auto& p : s.points) EXPECT_TRUE(p.flags & kFlagReference);
    const auto a = asymmetry_series(s);
    for (const auto& p : a.points) EXPECT_TRUE(std::isnan(p.dD));
}

TEST(Series, MissingReferenceRejected) {
    EXPECT_THROW((void)distance_series({{0.0, totals({1.0, 1.0}), 0}, {1.0, totals({1.0, 1.0}), 0}}, {2, 0.0, 1.0}),
                 ValidationError);
}

TEST(Flags, StringRoundTrip) {
    EXPECT_EQ(flags_to_string(kFlagNone), "ok");
    for (unsigned f = 0; f < 16; ++f) EXPECT_EQ(flags_from_string(flags_to_string(f)), f);
    EXPECT_THROW((void)flags_from_string("bogus"), std::exception);
}

TEST(Asymmetry, Examples) {
    const auto a = asymmetry_series(series_of({{0.0, 0.3}, {0.5, 0.0}, {1.0, 0.1}}));
    ASSERT_EQ(a.points.size(), 2u);
    EXPECT_DOUBLE_EQ(a.points[0].dD, 0.2);
    EXPECT_EQ(a.points[1].P, 0.5);
    EXPECT_EQ(a.points[1].dD, 0.0);
}

TEST(Asymmetry, SymmetricSeriesVanishes) {
    std::vector<std::pair<double, double>> pd;
    for (const auto& g : polarization_grid(24).points) {
        const int delta = g.n_up - g.n_down;
        pd.emplace_back(g.P, std::sin(0.1 * std::min(delta, 24 - delta)));
    }
    for (const auto& p : asymmetry_series(series_of(pd)).points) EXPECT_EQ(p.dD, 0.0);
}

TEST(Asymmetry, UnpairableGridRejected) {
    EXPECT_THROW((void)asymmetry_series(series_of({{0.0, 0.1}, {0.25, 0.05}, {0.5, 0.0}, {1.0, 0.2}})), ValidationError);
}

TEST(Asymmetry, EmittedGridsAlwaysPair) {
    for (int N = 4; N <= 160; N += 4)
        for (int stride = 1; stride <= N / 4; ++stride) {
            if ((N / 4) % stride != 0) continue;
            std::vector<std::pair<double, double>> pd;
            for (const auto& g : polarization_grid(N, stride).points) pd.emplace_back(g.P, g.P);
            EXPECT_NO_THROW((void)asymmetry_series(series_of(pd))) << "N=" << N << " stride=" << stride;
        }
}

TEST(Report, AllZeroSeries) {
    const auto r = asymmetry_report(flat_asymmetry(half_grid(24), 0.0));
    EXPECT_EQ(r.baseline, 0.0);
    EXPECT_TRUE(r.elevated.empty());
}

TEST(Report, SpikeAtZeroOnlyIsReportedSeparately) {
    auto s = flat_asymmetry(half_grid(24), 0.01);
    s.points.front().dD = 5.0;
    const auto r = asymmetry_report(s);
    EXPECT_TRUE(r.elevated.empty());
    ASSERT_TRUE(r.p0_value.has_value());
    EXPECT_EQ(*r.p0_value, 5.0);
    EXPECT_NEAR(r.edge_P, 1.0 / 12.0, 1e-15);
    EXPECT_EQ(r.edge_value, 0.01);
}

TEST(Report, ElevatedRegionFound) {
    auto s = flat_asymmetry(half_grid(24), 0.01);
    s.points[1].dD = 0.1;  // P = 1/12
    s.points[3].dD = 0.05;  // P = 1/4
    const auto r = asymmetry_report(s, 3.0);
    EXPECT_NEAR(r.baseline, 0.01, 1e-15);
    ASSERT_EQ(r.elevated.size(), 2u);
    EXPECT_NEAR(r.elevated[0], 1.0 / 12.0, 1e-15);
    EXPECT_NEAR(r.elevated[1], 0.25, 1e-15);
}

TEST(Report, AttractiveChainFixtureHasElevatedRegion) {
    const auto text = io::read_file(std::filesystem::path(HUBMETRIC_FIXTURE_DIR) / "L40_U-4_n0.6" / "D_series.csv");
    const auto r = asymmetry_report(asymmetry_series(distance_series_from_csv(text)), 3.0);
    EXPECT_FALSE(r.elevated.empty()) << "baseline " << r.baseline << ", edge " << r.edge_value;
    for (double p : r.elevated) {
        EXPECT_GT(p, 0.0);
        EXPECT_LE(p, 1.0 / 3.0);
    }
}

TEST(Report, TooFewPoints) {
    EXPECT_THROW((void)asymmetry_report(flat_asymmetry(half_grid(8), 0.0)), ValidationError);
    EXPECT_THROW((void)asymmetry_report(flat_asymmetry(half_grid(24), 0.0), 0.0), ValidationError);
}

TEST(Report, JsonHasAllFields) {
    const auto j = to_json(asymmetry_report(flat_asymmetry(half_grid(24), 0.0)));
    for (const char* key : {"status", "context", "k", "baseline_window", "baseline", "edge_P", "edge_value", "p0_value",
                            "p_c_max", "elevated"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(SeriesCsv, RoundTrip) {
    DistanceSeries s;
    s.points = {{0.0, 0.123456789012345678, kFlagNone},
                {0.5, 0.0, kFlagNone},
                {1.0, std::numeric_limits<double>::quiet_NaN(), kFlagFailed | kFlagReference}};
    const auto text = to_csv(s);
    EXPECT_EQ(text.substr(0, text.find('\n')), "P,D,flags");
    const auto back = distance_series_from_csv(text);
    ASSERT_EQ(back.points.size(), 3u);
    EXPECT_EQ(back.points[0].D, s.points[0].D);
    EXPECT_TRUE(std::isnan(back.points[2].D));
    EXPECT_EQ(back.points[2].flags, s.points[2].flags);
    EXPECT_EQ(to_csv(back), text);
}

TEST(Grid, FortyEightParticles) {
    const auto g = polarization_grid(48);
    ASSERT_EQ(g.points.size(), 25u);
    EXPECT_EQ(g.points.front().P, 0.0);
    EXPECT_EQ(g.points.back().P, 1.0);
    EXPECT_NEAR(g.points[1].P, 1.0 / 24.0, 1e-15);
    EXPECT_EQ(g.points[12].P, 0.5);
    EXPECT_EQ(g.points[12].n_up - g.points[12].n_down, 24);
}

TEST(Grid, FortyParticlesContainsReference) {
    const auto g = polarization_grid(40);
    const bool found = std::any_of(g.points.begin(), g.points.end(),
                                   [](const GridPoint& p) { return p.n_up == 30 && p.n_down == 10 && p.P == 0.5; });
    EXPECT_TRUE(found);
}

TEST(Grid, InvariantsHold) {
    for (int N = 4; N <= 200; N += 4) {
        const auto g = polarization_grid(N);
        for (const auto& p : g.points) {
            ASSERT_EQ(p.n_up + p.n_down, N);
            ASSERT_GE(p.n_up, p.n_down);
            ASSERT_EQ((p.n_up - p.n_down) % 2, 0);
            const int partner = N - (p.n_up - p.n_down);
            ASSERT_TRUE(std::any_of(g.points.begin(), g.points.end(),
                                    [&](const GridPoint& q) { return q.n_up - q.n_down == partner; }));
        }
    }
}

TEST(Grid, Errors) {
    try {
        (void)polarization_grid(42);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("P = 0.5"), std::string::npos);
    }
    EXPECT_THROW((void)polarization_grid(0), ValidationError);
    EXPECT_THROW((void)polarization_grid(7), ValidationError);
    EXPECT_THROW((void)polarization_grid(24, 4), ValidationError);
    EXPECT_EQ(polarization_grid(24, 2).points.size(), 7u);
}
