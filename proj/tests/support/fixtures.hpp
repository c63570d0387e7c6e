#pragma once

// Shared helpers for the test suites, plus a charged particle in a constant
// magnetic field. None of the built-in systems has a nonzero mixed Hessian
// d2L/dx dxdot or a nonzero bracket constant; this one has both.

#include "pluriform/pluriform.hpp"

#include <initializer_list>
#include <vector>

namespace fixtures {

using pluriform::MatrixXd;
using pluriform::VectorXd;

inline VectorXd vec(std::initializer_list<double> v) {
    VectorXd out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

inline double max_abs(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }
inline double max_abs(const MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// L = |xdot|^2/2 + (B/2)(x1 xdot2 - x2 xdot1) with the two translations.
/// {H_1, H_2} = -B.
inline pluriform::LagrangianSystem make_magnetic(double b) {
    using namespace pluriform;
    LagrangianSystem sys;
    sys.name = "magnetic";
    sys.n = 2;
    sys.lagrangian = JetScalarFn([b](auto x, auto xd) {
        return 0.5 * (xd[0] * xd[0] + xd[1] * xd[1]) + 0.5 * b * (x[0] * xd[1] - x[1] * xd[0]);
    });
    SymmetrySpec t1;
    t1.name = "translate_1";
    t1.characteristic = JetVectorFn([](auto x, auto) {
        using S = pluriform::detail::scalar_of<decltype(x)>;
        return std::vector<S>{S(1.0), S(0.0)};
    });
    t1.flux = JetScalarFn([b](auto x, auto) { return 0.5 * b * x[1]; });
    SymmetrySpec t2;
    t2.name = "translate_2";
    t2.characteristic = JetVectorFn([](auto x, auto) {
        using S = pluriform::detail::scalar_of<decltype(x)>;
        return std::vector<S>{S(0.0), S(1.0)};
    });
    t2.flux = JetScalarFn([b](auto x, auto) { return -0.5 * b * x[0]; });
    sys.symmetries = {t1, t2};
    sys.sample_box = SampleBox::uniform(2, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0});
    return sys;
}

/// First component of D_{v1}V^(2) - D_{v2}V^(1) for the Kepler Runge-Lenz pair,
/// derived independently by symbolic differentiation.
inline double kepler_commutator_component(const pluriform::Jet2Point& j) {
    const VectorXd& x = j.x;
    const VectorXd& v = j.xdot;
    const VectorXd& a = j.xddot;
    return -a(1) * (2.0 * x(0) * x(0) + 2.0 * x(1) * x(1) + x(2) * x(2)) - x(1) * x(2) * a(2) -
           x(1) * (3.0 * v(0) * v(0) + v(1) * v(1) + v(2) * v(2)) + 2.0 * x(0) * v(0) * v(1);
}

inline std::vector<pluriform::LagrangianSystem> builtin_systems() {
    using namespace pluriform;
    return {make_harmonic(1.3), make_kepler(1.0), make_toda(4, TodaBoundary::periodic),
            make_toda(4, TodaBoundary::open_end), make_toda(3, TodaBoundary::periodic),
            make_toda(5, TodaBoundary::open_end)};
}

inline std::string label(const pluriform::LagrangianSystem& s) {
    return s.name + "_n" + std::to_string(s.n);
}

} // namespace fixtures
