#pragma once

// Variational symmetries and their Noether integrals, checked as pointwise
// identities on (possibly off-shell) jets.

#include "pluriform/mechsys/lagrangian.hpp"

namespace pluriform {

/// D_t f on the jet.
inline double total_t_derivative(const LagrangianSystem& sys, const JetScalarFn& f,
                                 const Jet2Point& jet) {
    detail::check_point(sys, jet.tangent());
    detail::check_dims(sys, jet.xddot, "xddot");
    return scalar_derivatives(f, jet.tangent()).total_t(jet.xdot, jet.xddot);
}

/// D_{v_k} f = V . df/dx + (D_t V) . df/dxdot.
inline double prolonged_symmetry_derivative(const LagrangianSystem& sys, int k,
                                            const JetScalarFn& f, const Jet2Point& jet) {
    const auto v = characteristic_derivatives(sys, k, jet.tangent());
    const auto d = scalar_derivatives(f, jet.tangent());
    return d.dx.dot(v.value) + d.dxdot.dot(v.total_t(jet.xdot, jet.xddot));
}

inline VectorXd prolonged_symmetry_derivative(const LagrangianSystem& sys, int k,
                                              const JetVectorFn& f, const Jet2Point& jet) {
    const auto v = characteristic_derivatives(sys, k, jet.tangent());
    const auto d = vector_derivatives(f, jet.tangent());
    return d.dx * v.value + d.dxdot * v.total_t(jet.xdot, jet.xddot);
}

/// D_{v_k}L - D_t F_k; identically zero for a variational symmetry.
inline double symmetry_residual(const LagrangianSystem& sys, int k, const Jet2Point& jet) {
    detail::check_dims(sys, jet.xddot, "xddot");
    const TangentPoint pt = jet.tangent();
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto l = scalar_derivatives(sys.lagrangian, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return l.dx.dot(v.value) + l.dxdot.dot(v.total_t(jet.xdot, jet.xddot)) -
           f.total_t(jet.xdot, jet.xddot);
}

/// J_k = p . V^(k) - F_k. k = 0 gives the energy.
inline double noether_integral(const LagrangianSystem& sys, int k, const TangentPoint& pt) {
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return momentum(sys, pt).dot(v.value) - f.value;
}

inline double energy_integral(const LagrangianSystem& sys, const TangentPoint& pt) {
    return noether_integral(sys, 0, pt);
}

/// Recovers F_k = p . V^(k) - J_k from a given integral value.
inline double flux_from_integral(const LagrangianSystem& sys, int k, const TangentPoint& pt,
                                 double integral) {
    const auto v = characteristic_derivatives(sys, k, pt);
    return momentum(sys, pt).dot(v.value) - integral;
}

/// J_k with its first derivatives, assembled from the derivatives of L, V and F.
inline ScalarDerivatives noether_integral_derivatives(const LagrangianSystem& sys, int k,
                                                      const TangentPoint& pt) {
    const auto ld = lagrangian_derivatives(sys, pt);
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return {ld.p.dot(v.value) - f.value,
            ld.mixed.transpose() * v.value + v.dx.transpose() * ld.p - f.dx,
            ld.w * v.value + v.dxdot.transpose() * ld.p - f.dxdot};
}

/// D_t J_k + V^(k) . E; vanishes identically off-shell.
inline double integral_characteristic_residual(const LagrangianSystem& sys, int k,
                                               const Jet2Point& jet) {
    const auto j = noether_integral_derivatives(sys, k, jet.tangent());
    const auto v = characteristic_derivatives(sys, k, jet.tangent());
    return j.total_t(jet.xdot, jet.xddot) + v.value.dot(el_residual(sys, jet));
}

/// dF_k/dxdot - (dV^(k)/dxdot)^T p; zero for any variational symmetry.
inline VectorXd flux_lemma_residual(const LagrangianSystem& sys, int k, const TangentPoint& pt) {
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return f.dxdot - v.dxdot.transpose() * momentum(sys, pt);
}

} // namespace pluriform
