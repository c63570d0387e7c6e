#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pluriform;
using fixtures::max_abs;
using fixtures::vec;

namespace {

std::vector<LagrangianSystem> toda_variants() {
    return {make_toda(3, TodaBoundary::periodic), make_toda(4, TodaBoundary::periodic),
            make_toda(4, TodaBoundary::open_end), make_toda(6, TodaBoundary::open_end)};
}

} // namespace

TEST(Commutator, DiagonalIsZeroAndSwapNegates) {
    const auto kep = make_kepler(1.0, KeplerSymmetries::runge_lenz);
    Sampler s(kep, 1);
    for (int i = 0; i < 20; ++i) {
        const Jet2Point j = s.jet2();
        EXPECT_EQ(max_abs(commutator_characteristic(kep, 2, 2, j)), 0.0);
        EXPECT_EQ(max_abs(VectorXd(commutator_characteristic(kep, 1, 3, j) + commutator_characteristic(kep, 3, 1, j))), 0.0);
        EXPECT_EQ(max_abs(VectorXd(commuting_residual(kep, 1, 2, j) + commuting_residual(kep, 2, 1, j))), 0.0);
    }
}

TEST(Commutator, KeplerFirstComponentMatchesSymbolicDerivation) {
    const auto kep = make_kepler(1.0, KeplerSymmetries::runge_lenz);
    Sampler s(kep, 2);
    for (int i = 0; i < 100; ++i) {
        const Jet2Point j = s.jet2();
        EXPECT_NEAR(commutator_characteristic(kep, 1, 2, j)(0), fixtures::kepler_commutator_component(j), 1e-12);
    }
}

TEST(Commutator, KeplerDoesNotCommute) {
    const auto kep = make_kepler(1.0, KeplerSymmetries::runge_lenz);
    Sampler s(kep, 3);
    for (int i = 0; i < 100; ++i) {
        const Jet2Point on = on_shell_jet(kep, s.tangent());
        EXPECT_GT(max_abs(commuting_residual(kep, 1, 2, on)), 1e-3);
    }
}

TEST(Commutator, TodaVanishesOnShell) {
    for (const auto& sys : toda_variants()) {
        Sampler s(sys, 4);
        for (int i = 0; i < 50; ++i)
            EXPECT_LT(max_abs(commutator_characteristic(sys, 1, 2, on_shell_jet(sys, s.tangent()))), 1e-9);
    }
}

TEST(Rij, SkewAndMatchesTodaReference) {
    for (const auto& sys : toda_variants()) {
        Sampler s(sys, 5);
        for (int i = 0; i < 100; ++i) {
            const TangentPoint pt = s.tangent();
            const MatrixXd r = rij(sys, 1, 2, pt);
            EXPECT_EQ(max_abs(MatrixXd(r + r.transpose())), 0.0);
            EXPECT_LT(max_abs(MatrixXd(r - (*sys.reference_rij)(1, 2, pt))), 1e-9) << fixtures::label(sys);
            EXPECT_EQ(max_abs(MatrixXd(rij(sys, 2, 1, pt) + r)), 0.0);
        }
        EXPECT_EQ(max_abs(rij(sys, 1, 1, s.tangent())), 0.0);
    }
}

TEST(Rij, AgreesWithFiniteDifferenceHessiansOfHk) {
    // r = H1_pp W H2_pp - H2_pp W H1_pp with H_pp estimated by differencing H_k in p.
    const auto sys = make_toda(4, TodaBoundary::open_end);
    Sampler s(sys, 6);
    const PhasePoint z = s.phase();
    const auto hpp = [&](int k) {
        MatrixXd m(sys.n, sys.n);
        const double h = 1e-5;
        for (int j = 0; j < sys.n; ++j) {
            PhasePoint a = z;
            PhasePoint b = z;
            a.p(j) += h;
            b.p(j) -= h;
            m.col(j) = (hk_gradients(sys, k, a).dp - hk_gradients(sys, k, b).dp) / (2 * h);
        }
        return m;
    };
    const MatrixXd w = velocity_hessian(sys, legendre_inverse(sys, z));
    const MatrixXd h1 = hpp(1);
    const MatrixXd h2 = hpp(2);
    const MatrixXd fd = h1 * w * h2 - h2 * w * h1;
    EXPECT_LT(max_abs(MatrixXd(fd - rij(sys, 1, 2, legendre_inverse(sys, z)))), 1e-5);
}

TEST(CommutingResidual, TodaVanishesOffShell) {
    for (const auto& sys : toda_variants()) {
        Sampler s(sys, 7);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) worst = std::max(worst, max_abs(commuting_residual(sys, 1, 2, s.jet2())));
        EXPECT_LT(worst, 1e-9) << fixtures::label(sys);
    }
}

TEST(CommutingResidual, MagneticTranslationsCommute) {
    const auto sys = fixtures::make_magnetic(1.1);
    Sampler s(sys, 8);
    for (int i = 0; i < 20; ++i) EXPECT_EQ(max_abs(commuting_residual(sys, 1, 2, s.jet2())), 0.0);
}

TEST(FluxCommutation, TodaWithMeasuredConstant) {
    for (const auto& sys : toda_variants()) {
        const double c = bracket_constancy(sys, 1, 2, 100, 9).mean_value;
        Sampler s(sys, 10);
        for (int i = 0; i < 100; ++i) {
            const Jet2Point j = s.jet2();
            EXPECT_LT(std::abs(flux_commutation_residual(sys, 1, 2, j, c)), 1e-9);
            EXPECT_EQ(flux_commutation_residual(sys, 1, 2, j, c) + flux_commutation_residual(sys, 2, 1, j, -c), 0.0);
        }
    }
}

TEST(FluxCommutation, MagneticConstantIsTheBracket) {
    const auto sys = fixtures::make_magnetic(0.8);
    const double c = bracket_constancy(sys, 1, 2, 20, 11).mean_value;
    Sampler s(sys, 12);
    for (int i = 0; i < 50; ++i) EXPECT_LT(std::abs(flux_commutation_residual(sys, 1, 2, s.jet2(), c)), 1e-14);
    EXPECT_GT(std::abs(flux_commutation_residual(sys, 1, 2, s.jet2(), 0.0)), 0.5);
}

TEST(FluxCommutation, DiagonalPair) {
    const auto h = make_harmonic(1.0);
    EXPECT_EQ(flux_commutation_residual(h, 1, 1, {vec({0.2}), vec({0.1}), vec({-0.3})}, 0.0), 0.0);
}

TEST(Symalg, TimeIndexIsRejected) {
    const auto sys = make_toda(4, TodaBoundary::periodic);
    const Jet2Point j{VectorXd::Zero(4), VectorXd::Zero(4), VectorXd::Zero(4)};
    EXPECT_THROW(commutator_characteristic(sys, 0, 1, j), IndexError);
    EXPECT_THROW(rij(sys, 1, 3, j.tangent()), IndexError);
}
