#pragma once

// Commutators of prolonged symmetries and the r_ij matrix relating them to
// the Euler-Lagrange residual.
//
// Every pairwise operation is computed for k < l and negated for k > l, so
// antisymmetry in (k, l) is exact.

#include "pluriform/mechsys/lagrangian.hpp"

namespace pluriform {

namespace detail {

inline void check_pair(const LagrangianSystem& sys, int k, int l) {
    check_symmetry_index(sys, k, false);
    check_symmetry_index(sys, l, false);
}

inline VectorXd commutator_ordered(const LagrangianSystem& sys, int k, int l,
                                   const Jet2Point& jet) {
    const TangentPoint pt = jet.tangent();
    const auto vk = characteristic_derivatives(sys, k, pt);
    const auto vl = characteristic_derivatives(sys, l, pt);
    const VectorXd dtk = vk.total_t(jet.xdot, jet.xddot);
    const VectorXd dtl = vl.total_t(jet.xdot, jet.xddot);
    // D_{v_k} V^(l) - D_{v_l} V^(k)
    return (vl.dx * vk.value + vl.dxdot * dtk) - (vk.dx * vl.value + vk.dxdot * dtl);
}

/// r = A_k W^-1 A_l^T - A_l W^-1 A_k^T with A = dV/dxdot.
inline MatrixXd rij_ordered(const LagrangianSystem& sys, int k, int l, const TangentPoint& pt) {
    const auto ld = lagrangian_derivatives(sys, pt);
    const auto vk = characteristic_derivatives(sys, k, pt);
    const auto vl = characteristic_derivatives(sys, l, pt);
    const MatrixXd prod = vk.dxdot * solve_velocity_hessian(ld.w, vl.dxdot.transpose());
    return prod - prod.transpose();
}

} // namespace detail

/// D_{v_k} V^(l) - D_{v_l} V^(k) on the jet.
inline VectorXd commutator_characteristic(const LagrangianSystem& sys, int k, int l,
                                          const Jet2Point& jet) {
    detail::check_pair(sys, k, l);
    detail::check_dims(sys, jet.xddot, "xddot");
    if (k == l) return VectorXd::Zero(sys.n);
    if (k > l) return -detail::commutator_ordered(sys, l, k, jet);
    return detail::commutator_ordered(sys, k, l, jet);
}

inline MatrixXd rij(const LagrangianSystem& sys, int k, int l, const TangentPoint& pt) {
    detail::check_pair(sys, k, l);
    detail::check_point(sys, pt);
    if (k == l) return MatrixXd::Zero(sys.n, sys.n);
    if (k > l) return -detail::rij_ordered(sys, l, k, pt);
    return detail::rij_ordered(sys, k, l, pt);
}

/// Commutator minus r E; identically zero for commuting symmetries.
inline VectorXd commuting_residual(const LagrangianSystem& sys, int k, int l,
                                   const Jet2Point& jet) {
    detail::check_pair(sys, k, l);
    if (k == l) return VectorXd::Zero(sys.n);
    if (k > l) return -commuting_residual(sys, l, k, jet);
    return commutator_characteristic(sys, k, l, jet) -
           rij(sys, k, l, jet.tangent()) * el_residual(sys, jet);
}

/// D_{v_k}F_l - D_{v_l}F_k - c_kl - p . [v_k, v_l].
inline double flux_commutation_residual(const LagrangianSystem& sys, int k, int l,
                                        const Jet2Point& jet, double c_kl) {
    detail::check_pair(sys, k, l);
    detail::check_dims(sys, jet.xddot, "xddot");
    if (k == l) return -c_kl;
    if (k > l) return -flux_commutation_residual(sys, l, k, jet, -c_kl);
    const TangentPoint pt = jet.tangent();
    const auto vk = characteristic_derivatives(sys, k, pt);
    const auto vl = characteristic_derivatives(sys, l, pt);
    const auto fk = flux_derivatives(sys, k, pt);
    const auto fl = flux_derivatives(sys, l, pt);
    const VectorXd dtk = vk.total_t(jet.xdot, jet.xddot);
    const VectorXd dtl = vl.total_t(jet.xdot, jet.xddot);
    const double dk_fl = fl.dx.dot(vk.value) + fl.dxdot.dot(dtk);
    const double dl_fk = fk.dx.dot(vl.value) + fk.dxdot.dot(dtl);
    return dk_fl - dl_fk - c_kl - momentum(sys, pt).dot(detail::commutator_ordered(sys, k, l, jet));
}

} // namespace pluriform
