// Copyright 2026 The hubmetric Authors
// SPDX-License-Identifier: Apache-2.0

#include "hubmetric/basis.hpp"
#include "hubmetric/density.hpp"
#include "hubmetric/free_fermion.hpp"
#include "hubmetric/hamiltonian.hpp"
#include "hubmetric/io.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <numbers>

using namespace hubmetric;

namespace {

// Lowest `k` eigenvalues of the dense operator.
std::vector<double> lowest(const SparseOperator& H, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.to_dense(), Eigen::EigenvaluesOnly);
    std::vector<double> out;
    for (int i = 0; i < k && i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

Config reflect(Config c, int L) {
    Config r = 0;
    for (int i = 0; i < L; ++i)
        if ((c >> i) & 1u) r |= Config{1} << (L - 1 - i);
    return r;
}

}  // namespace

TEST(ModelSpec, DerivedQuantities) {
    const ModelSpec s{8, 1.0, -4.0, 3, 1};
    EXPECT_EQ(s.particles(), 4);
    EXPECT_DOUBLE_EQ(s.polarization(), 0.5);
    EXPECT_DOUBLE_EQ(s.filling(), 0.5);
    EXPECT_EQ(s.spin_flipped().n_up, 1);
    EXPECT_EQ(s.spin_flipped().n_down, 3);
}

TEST(ModelSpec, RejectsInvalid) {
    EXPECT_THROW((ModelSpec{1, 1.0, 0.0, 0, 0}.validate()), ValidationError);
    EXPECT_THROW((ModelSpec{4, 1.0, 0.0, 5, 0}.validate()), ValidationError);
    EXPECT_THROW((ModelSpec{4, 1.0, 0.0, 0, -1}.validate()), ValidationError);
    EXPECT_NO_THROW((ModelSpec{4, 1.0, 0.0, 4, 4}.validate()));
}

TEST(Basis, Dimensions) {
    EXPECT_EQ(enumerate_basis({2, 1.0, 0.0, 1, 1}).dimension(), 4u);
    EXPECT_EQ(enumerate_basis({4, 1.0, 0.0, 2, 1}).dimension(), 24u);
    EXPECT_EQ(enumerate_basis({8, 1.0, 0.0, 3, 2}).dimension(), 1568u);
}

TEST(Basis, DimensionMatchesExhaustiveCount) {
    const int L = 8;
    std::size_t up = 0, dn = 0;
    for (Config c = 0; c < (Config{1} << L); ++c) {
        up += std::popcount(c) == 3;
        dn += std::popcount(c) == 2;
    }
    EXPECT_EQ(up * dn, 1568u);
    EXPECT_EQ(binomial(8, 3) * binomial(8, 2), 1568u);
}

TEST(Basis, ConfigurationsAscendAndBiject) {
    for (int L = 2; L <= 8; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd <= L; ++nd) {
                const auto basis = enumerate_basis({L, 1.0, 0.0, nu, nd});
                if (basis.dimension() > 10'000) continue;
                const auto& ups = basis.up_configs();
                for (std::size_t i = 1; i < ups.size(); ++i) ASSERT_LT(ups[i - 1], ups[i]);
                for (std::size_t idx = 0; idx < basis.dimension(); ++idx) {
                    const Config u = basis.up_of(idx), d = basis.down_of(idx);
                    ASSERT_EQ(std::popcount(u), nu);
                    ASSERT_EQ(std::popcount(d), nd);
                    ASSERT_EQ(basis.index_of(u, d), idx);
                }
            }
}

TEST(Basis, DimensionCap) {
    EXPECT_THROW((void)enumerate_basis({8, 1.0, 0.0, 4, 4}, 100), DimensionOverflow);
    EXPECT_THROW((void)enumerate_basis({80, 1.0, 0.0, 24, 24}), DimensionOverflow);
}

TEST(Hamiltonian, DimerMatchesClosedForm) {
    for (double U : {-4.0, -8.0, 0.0, 3.0}) {
        const ModelSpec s{2, 1.0, U, 1, 1};
        const auto H = build_hamiltonian(s, enumerate_basis(s));
        EXPECT_NEAR(lowest(H, 1)[0], 0.5 * (U - std::sqrt(U * U + 16.0)), 1e-12) << "U=" << U;
    }
    const ModelSpec s{2, 1.0, -4.0, 1, 1};
    EXPECT_NEAR(lowest(build_hamiltonian(s, enumerate_basis(s)), 1)[0], -4.828427, 1e-6);
}

TEST(Hamiltonian, HermitianWithoutExplicitZeros) {
    for (int L = 2; L <= 7; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd <= nu; ++nd) {
                const ModelSpec s{L, 1.0, -2.5, nu, nd};
                const auto H = build_hamiltonian(s, enumerate_basis(s));
                ASSERT_TRUE(H.is_symmetric()) << L << " " << nu << "+" << nd;
                for (std::size_t r = 0; r < H.dimension(); ++r)
                    for (double v : H.row_values(r)) ASSERT_NE(v, 0.0);
            }
}

TEST(Hamiltonian, ReflectionInvariant) {
    for (int L = 2; L <= 6; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd <= L; ++nd) {
                const ModelSpec s{L, 1.0, -3.0, nu, nd};
                const auto basis = enumerate_basis(s);
                const auto H = build_hamiltonian(s, basis);
                const std::size_t dim = basis.dimension();
                // Site reversal of an up-then-down ordered product state picks up
                // the sign of reversing each species' creation string.
                auto sign = [](Config c) { const int n = std::popcount(c); return ((n * (n - 1) / 2) % 2) ? -1.0 : 1.0; };
                std::vector<std::size_t> perm(dim);
                std::vector<double> phase(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    const Config u = basis.up_of(i), d = basis.down_of(i);
                    perm[i] = basis.index_of(reflect(u, L), reflect(d, L));
                    phase[i] = sign(u) * sign(d);
                }
                for (std::size_t i = 0; i < dim; ++i)
                    for (std::size_t j = 0; j < dim; ++j)
                        ASSERT_EQ(H.at(i, j), phase[i] * phase[j] * H.at(perm[i], perm[j]))
                            << "L=" << L << " " << nu << "+" << nd;
            }
}

TEST(Hamiltonian, SpinExchangeSpectrum) {
    for (int L = 2; L <= 6; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd < nu; ++nd) {
                const ModelSpec a{L, 1.0, -4.0, nu, nd};
                const ModelSpec b = a.spin_flipped();
                const auto ea = lowest(build_hamiltonian(a, enumerate_basis(a)), 3);
                const auto eb = lowest(build_hamiltonian(b, enumerate_basis(b)), 3);
                ASSERT_EQ(ea.size(), eb.size());
                for (std::size_t k = 0; k < ea.size(); ++k) EXPECT_NEAR(ea[k], eb[k], 1e-10);
            }
}

TEST(Hamiltonian, NonInteractingGroundEnergy) {
    for (int L = 2; L <= 6; ++L)
        for (int nu = 0; nu <= L; ++nu)
            for (int nd = 0; nd <= L; ++nd) {
                const ModelSpec s{L, 1.0, 0.0, nu, nd};
                const double e = lowest(build_hamiltonian(s, enumerate_basis(s)), 1)[0];
                EXPECT_NEAR(e, free_fermion_energy(L, nu) + free_fermion_energy(L, nd), 1e-10);
            }
}

TEST(Hamiltonian, DiagonalCountsDoubleOccupancy) {
    const ModelSpec s{2, 1.0, -4.0, 2, 2};
    const auto H = build_hamiltonian(s, enumerate_basis(s));
    ASSERT_EQ(H.dimension(), 1u);
    EXPECT_EQ(H.at(0, 0), -8.0);
}

TEST(FreeFermion, SingleParticleEnergies) {
    const auto e2 = single_particle_energies(2, 1.0);
    EXPECT_NEAR(e2[0], -1.0, 1e-15);
    EXPECT_NEAR(e2[1], 1.0, 1e-15);
    EXPECT_NEAR(single_particle_energies(4, 1.0)[0], -2.0 * std::cos(std::numbers::pi / 5.0), 1e-15);
    EXPECT_NEAR(single_particle_energies(4, 1.0)[0], -1.618034, 1e-6);
    EXPECT_NEAR(free_fermion_energy(16, 4), -7.009343, 1e-6);
}

TEST(FreeFermion, Density) {
    const auto p = free_fermion_density(4, 1);
    const double expect[] = {0.138197, 0.361803, 0.361803, 0.138197};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(p.total[i], expect[i], 1e-6);
    for (int L : {3, 8, 13}) {
        const auto full = free_fermion_density(L, L);
        for (double v : full.total) EXPECT_NEAR(v, 1.0, 1e-12);
        for (int N = 0; N <= L; ++N) EXPECT_NEAR(free_fermion_density(L, N).particles(), N, 1e-12);
    }
}

TEST(Density, TotalsAndSymmetry) {
    const DensityProfile p({0.2, 0.5, 0.3}, {0.1, 0.0, 0.4});
    EXPECT_DOUBLE_EQ(p.total[0], 0.3);
    EXPECT_NEAR(p.particles(), 1.5, 1e-15);
    EXPECT_NEAR(p.particles_up(), 1.0, 1e-15);
    EXPECT_NEAR(p.reflection_asymmetry(), 0.4, 1e-15);
}

TEST(Density, CsvRoundTripIsExact) {
    const auto p = free_fermion_density(11, 4);
    const std::string text = to_csv(p);
    EXPECT_EQ(text.substr(0, text.find('\n')), "site,n_up,n_down,n_total");
    const auto q = profile_from_csv(text);
    EXPECT_EQ(p, q);
    EXPECT_EQ(to_csv(q), text);
}

TEST(Io, FormatDoubleRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, -4.82842712474619, 1e-300, 0.0})
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    EXPECT_EQ(io::format_short(0.6), "0.6");
    EXPECT_THROW((void)io::parse_double("abc"), IoError);
}

TEST(Io, Crc32KnownValue) { EXPECT_EQ(io::crc32("123456789"), 0xCBF43926u); }
