#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pluriform;
using fixtures::max_abs;
using fixtures::vec;

namespace {

double phase_distance(const PhasePoint& a, const PhasePoint& b) {
    return std::sqrt((a.x - b.x).squaredNorm() + (a.p - b.p).squaredNorm());
}

} // namespace

TEST(FlowField, Examples) {
    const auto toda = make_toda(3, TodaBoundary::periodic);
    const auto f = flow_field(toda, 1, {vec({0, 0, 0}), vec({1, 0, 0})});
    EXPECT_EQ(max_abs(VectorXd(f.dx - vec({3, 2, 2}))), 0.0);

    const auto kep = make_kepler(1.0);
    Sampler s(kep, 1);
    const PhasePoint z = s.phase();
    const auto g0 = flow_field(kep, 0, z);
    EXPECT_EQ(max_abs(VectorXd(g0.dx - z.p)), 0.0);
    EXPECT_LT(max_abs(VectorXd(g0.dp + z.x / std::pow(z.x.norm(), 3))), 1e-14);
    EXPECT_EQ(max_abs(VectorXd(flow_field(kep, 1, z).dx - characteristic_derivatives(kep, 1, {z.x, z.p}).value)), 0.0);
}

TEST(Integrate, ZeroDurationPath) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    const PhasePoint z{vec({0.1, 0.2, 0.3, 0.4}), vec({0.5, 0.0, -0.5, 0.2})};
    EXPECT_EQ(integrate_path(toda, {}, z).nodes.size(), 1u);
    EXPECT_EQ(integrate_path(toda, {{{1, 0.0}}}, z).nodes.size(), 1u);
    EXPECT_EQ(integrate_segment(toda, 2, z, 0.0).size(), 1u);
}

TEST(Integrate, HarmonicPeriodReturnsToStart) {
    const auto h = make_harmonic(1.0);
    const PhasePoint z{vec({0.7}), vec({-0.3})};
    const auto pts = integrate_segment(h, 0, z, 2.0 * std::numbers::pi, 1e-3);
    EXPECT_LT(phase_distance(pts.back(), z), 1e-10);
}

TEST(Integrate, HarmonicMatchesClosedForm) {
    const double w = 1.7;
    const auto h = make_harmonic(w);
    const PhasePoint z{vec({0.4}), vec({0.9})};
    const auto pts = integrate_segment(h, 0, z, 1.3, 1e-3);
    const double t = 1.3;
    const double x = 0.4 * std::cos(w * t) + 0.9 / w * std::sin(w * t);
    const double p = -0.4 * w * std::sin(w * t) + 0.9 * std::cos(w * t);
    EXPECT_NEAR(pts.back().x(0), x, 1e-11);
    EXPECT_NEAR(pts.back().p(0), p, 1e-11);
}

TEST(Integrate, SegmentsUseEvenUniformSteps) {
    const auto h = make_harmonic(1.0);
    const PhasePoint z{vec({1}), vec({0})};
    EXPECT_EQ(integrate_segment(h, 0, z, 0.0105, 1e-3).size(), 13u);
    EXPECT_EQ(integrate_segment(h, 0, z, -0.01, 1e-3).size(), 11u);
    EXPECT_THROW(integrate_segment(h, 0, z, 1.0, 0.0), ParameterError);
    EXPECT_THROW(integrate_segment(h, 0, z, 1.0, 1e-12), ParameterError);
    EXPECT_THROW(integrate_segment(h, 2, z, 1.0, 1e-3), IndexError);
}

TEST(Integrate, TrajectoryBookkeeping) {
    const auto toda = make_toda(4, TodaBoundary::open_end);
    const PhasePoint z{vec({0.1, -0.2, 0.0, 0.3}), vec({0.4, 0.1, -0.3, 0.2})};
    const auto traj = integrate_path(toda, {{{0, 0.02}, {2, -0.01}, {1, 0.01}}}, z, 1e-3);
    ASSERT_EQ(traj.nodes.size(), 1u + 20 + 10 + 10);
    for (std::size_t i = 1; i < traj.nodes.size(); ++i) {
        const VectorXd d = traj.nodes[i].times - traj.nodes[i - 1].times;
        EXPECT_EQ((d.array() != 0.0).count(), 1);
    }
    EXPECT_LT(max_abs(VectorXd(traj.nodes.back().times - vec({0.02, 0.01, -0.01}))), 1e-15);
    EXPECT_EQ(traj.nodes.back().integrals.size(), 3);
}

TEST(Integrate, TodaEnergyDrift) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    const PhasePoint z{vec({0.0, 0.1, 0.2, 0.3}), vec({0.5, 0.27, -0.21, -0.49})};
    const auto traj = integrate_path(toda, {{{0, 10.0}}}, z, 1e-3);
    const VectorXd& first = traj.nodes.front().integrals;
    double drift = 0.0;
    for (const auto& n : traj.nodes) drift = std::max(drift, max_abs(VectorXd(n.integrals - first)));
    EXPECT_LT(drift, 1e-9);
}

TEST(CommutativityDefect, Basics) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    const PhasePoint z{vec({0.1, -0.2, 0.3, 0.0}), vec({0.5, -0.1, 0.2, -0.3})};
    EXPECT_EQ(commutativity_defect(toda, 1, 2, z, 0.0, 1e-3), 0.0);
    EXPECT_EQ(commutativity_defect(toda, 2, 2, z, 0.2, 1e-3), 0.0);
    const double d1 = commutativity_defect(toda, 1, 2, z, 0.2, 2e-3);
    const double d2 = commutativity_defect(toda, 1, 2, z, 0.2, 1e-3);
    EXPECT_GT(d1 / d2, 12.0);
    EXPECT_LT(d1 / d2, 20.0);
}

TEST(Coefficients, LkExamples) {
    const auto toda = make_toda(3, TodaBoundary::periodic);
    const TangentPoint pt{vec({0, 0, 0}), vec({1, 0, 0})};
    EXPECT_NEAR(coeff_Lk(toda, 1, pt, VectorXd::Zero(3)), -7.0 / 3.0, 1e-14);
    for (const auto& sys : fixtures::builtin_systems()) {
        Sampler s(sys, 2);
        for (int i = 0; i < 20; ++i) {
            const TangentPoint q = s.tangent();
            for (int k = 1; k <= sys.symmetry_count(); ++k) {
                const VectorXd v = characteristic_derivatives(sys, k, q).value;
                EXPECT_NEAR(coeff_Lk(sys, k, q, v), flux_derivatives(sys, k, q).value, 1e-12);
            }
        }
    }
}

TEST(Coefficients, LkDependsOnXtOnlyThroughMomentum) {
    const auto kep = make_kepler(1.0);
    Sampler s(kep, 3);
    const TangentPoint pt = s.tangent();
    const VectorXd a = s.tangent().xdot;
    const VectorXd b = s.tangent().xdot;
    EXPECT_NEAR(coeff_Lk(kep, 1, pt, a) - coeff_Lk(kep, 1, pt, b), momentum(kep, pt).dot(a - b), 1e-13);
}

TEST(Coefficients, LambdaExamples) {
    const auto h = make_harmonic(1.0);
    EXPECT_DOUBLE_EQ(coeff_Lambda_k(h, 0, {vec({0}), vec({1})}, vec({1})), 0.5);
    const auto toda = make_toda(4, TodaBoundary::open_end);
    Sampler s(toda, 4);
    for (int i = 0; i < 50; ++i) {
        const TangentPoint pt = s.tangent();
        const VectorXd xt = s.tangent().xdot;
        for (int k = 0; k <= 2; ++k)
            EXPECT_NEAR(coeff_Lambda_k(toda, k, legendre(toda, pt), xt), coeff_Lk(toda, k, pt, xt), 1e-10);
        EXPECT_NEAR(coeff_Lambda_k(toda, 2, legendre(toda, pt), VectorXd::Zero(4)),
                    -hk_value(toda, 2, legendre(toda, pt)), 1e-15);
    }
}

TEST(Action, EmptyAndReversed) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    const PhasePoint z{vec({0.1, -0.2, 0.3, 0.0}), vec({0.5, -0.1, 0.2, -0.3})};
    EXPECT_EQ(action_along_path(toda, {}, z), 0.0);
    const MultiTimePath fwd{{{0, 0.3}, {1, 0.2}}};
    const double a = action_along_path(toda, fwd, z);
    const PhasePoint end = integrate_path(toda, fwd, z).nodes.back().phase;
    const double b = action_along_path(toda, {{{1, -0.2}, {0, -0.3}}}, end);
    EXPECT_NEAR(a, -b, 1e-10);
}

TEST(Action, HarmonicMatchesClosedForm) {
    // On the flow of H, Lambda = L = (p^2 - w^2 x^2)/2 along x = A cos(w t).
    const double w = 1.3;
    const auto h = make_harmonic(w);
    const double t = 0.9;
    const double s = action_along_path(h, {{{0, t}}}, {vec({1.0}), vec({0.0})});
    const double exact = -0.25 * w * std::sin(2.0 * w * t);
    EXPECT_NEAR(s, exact, 1e-12);
}

TEST(Loop, ZeroAreaAndTodaClosedness) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    const PhasePoint z{vec({0.1, -0.2, 0.3, 0.0}), vec({0.5, -0.1, 0.2, -0.3})};
    EXPECT_EQ(loop_closedness_defect(toda, {1, 2, 0.0, 0.2, z, 1e-3}), 0.0);
    const double c = bracket_constancy(toda, 1, 2, 100, 5).mean_value;
    EXPECT_LT(std::abs(loop_closedness_defect(toda, {1, 2, 0.2, 0.2, z, 1e-3}) - c * 0.04), 1e-6);
    EXPECT_THROW(loop_closedness_defect(toda, {1, 1, 0.2, 0.2, z, 1e-3}), ParameterError);
}

TEST(Loop, MagneticDefectIsBracketTimesArea) {
    const auto sys = fixtures::make_magnetic(0.7);
    const double c = bracket_constancy(sys, 1, 2, 10, 6).mean_value;
    const PhasePoint z{vec({0.2, -0.1}), vec({0.3, 0.4})};
    const double d = loop_closedness_defect(sys, {1, 2, 0.2, 0.3, z, 1e-3});
    EXPECT_NEAR(d, c * 0.06, 1e-10);
    EXPECT_GT(std::abs(d), 1e-2);
}

TEST(MultiTimeEl, OnShellVanishesAndMatchesReferences) {
    for (const auto& sys : fixtures::builtin_systems()) {
        Sampler s(sys, 7);
        for (int i = 0; i < 100; ++i) {
            const ExtendedJet e = on_shell_extended_jet(sys, s.tangent());
            for (int k = 1; k <= sys.symmetry_count(); ++k) {
                const VectorXd el = multitime_el_residual(sys, k, e);
                EXPECT_LT(max_abs(el), 1e-9);
                if (sys.reference_multitime_el) {
                    EXPECT_LT(max_abs(VectorXd(el - (*sys.reference_multitime_el)(k, e))), 1e-9);
                }
            }
        }
    }
}

TEST(MultiTimeEl, OffShellIsNotIdenticallyZero) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    Sampler s(toda, 8);
    EXPECT_GT(max_abs(multitime_el_residual(toda, 1, s.extended())), 1e-3);
}

TEST(MultiTimeEl, VelocityFamilyIsFlowConstraint) {
    // dL_k/dxdot = W (x_{t_k} - V^(k)), checked by differencing L_k in xdot.
    const auto kep = make_kepler(1.0);
    Sampler s(kep, 9);
    for (int i = 0; i < 20; ++i) {
        const TangentPoint pt = s.tangent();
        const VectorXd xt = s.tangent().xdot;
        const double h = 1e-6;
        VectorXd g(3);
        for (int j = 0; j < 3; ++j) {
            TangentPoint a = pt;
            TangentPoint b = pt;
            a.xdot(j) += h;
            b.xdot(j) -= h;
            g(j) = (coeff_Lk(kep, 1, a, xt) - coeff_Lk(kep, 1, b, xt)) / (2 * h);
        }
        const VectorXd expected = velocity_hessian(kep, pt) * (xt - characteristic_derivatives(kep, 1, pt).value);
        EXPECT_LT(max_abs(VectorXd(g - expected)), 1e-7);
    }
}

TEST(OffShell, IdentityOneAtGenericJets) {
    auto systems = fixtures::builtin_systems();
    systems.push_back(fixtures::make_magnetic(0.5));
    for (const auto& sys : systems) {
        Sampler s(sys, 10);
        for (int i = 0; i < 100; ++i) {
            const ExtendedJet e = s.extended();
            for (int k = 1; k <= sys.symmetry_count(); ++k) EXPECT_LT(std::abs(offshell_identity_1(sys, k, e)), 1e-8);
        }
    }
    const auto h = make_harmonic(2.0);
    Sampler s(h, 11);
    for (int i = 0; i < 20; ++i) EXPECT_LT(std::abs(offshell_identity_1(h, 1, s.extended())), 1e-12);
}

TEST(OffShell, IdentityTwoAtGenericJets) {
    std::vector<LagrangianSystem> systems{make_toda(4, TodaBoundary::periodic), make_toda(5, TodaBoundary::open_end),
                                          fixtures::make_magnetic(0.5)};
    for (const auto& sys : systems) {
        const double c = bracket_constancy(sys, 1, 2, 50, 12).mean_value;
        Sampler s(sys, 13);
        for (int i = 0; i < 100; ++i)
            EXPECT_LT(std::abs(offshell_identity_2(sys, 1, 2, s.extended(), c)), 1e-8) << sys.name;
    }
}

TEST(OffShell, IdentityTwoNeedsTheBracketConstant) {
    // With c = 0 instead of -B the magnetic residual is visibly nonzero.
    const auto sys = fixtures::make_magnetic(0.5);
    Sampler s(sys, 14);
    EXPECT_GT(std::abs(offshell_identity_2(sys, 1, 2, s.extended(), 0.0)), 0.1);
}

TEST(OffShell, IdentityOneWithOnlyElImposed) {
    const auto toda = make_toda(4, TodaBoundary::open_end);
    Sampler s(toda, 15);
    for (int i = 0; i < 50; ++i) {
        ExtendedJet e = s.extended();
        e.xddot = accel(toda, e.tangent());
        for (int k = 1; k <= 2; ++k) EXPECT_LT(std::abs(offshell_identity_1(toda, k, e)), 1e-8);
    }
}

TEST(OffShell, BadExtendedJetShape) {
    const auto toda = make_toda(4, TodaBoundary::periodic);
    Sampler s(toda, 16);
    ExtendedJet e = s.extended();
    e.xt.pop_back();
    EXPECT_THROW(offshell_identity_1(toda, 1, e), ParameterError);
    EXPECT_THROW(offshell_identity_2(toda, 1, 1, s.extended(), 0.0), ParameterError);
}
