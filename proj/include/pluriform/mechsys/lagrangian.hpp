#pragma once

// Pointwise derivative bundles of L, V^(k) and F_k on the tangent bundle, and the
// Euler-Lagrange machinery built on them.

#include "pluriform/diff/derivatives.hpp"
#include "pluriform/mechsys/types.hpp"

#include <Eigen/Dense>

namespace pluriform {

/// L and its derivatives at a tangent point.
struct LagrangianDerivatives {
    double value = 0.0;
    VectorXd dx;        ///< dL/dx
    VectorXd p;         ///< dL/dxdot
    MatrixXd w;         ///< W(i,j) = d2L/dxdot_i dxdot_j
    MatrixXd mixed;     ///< mixed(i,j) = d2L/dxdot_i dx_j
};

/// First derivatives of a scalar jet function.
struct ScalarDerivatives {
    double value = 0.0;
    VectorXd dx;
    VectorXd dxdot;

    /// D_t along a second jet.
    double total_t(const VectorXd& xdot, const VectorXd& xddot) const {
        return dx.dot(xdot) + dxdot.dot(xddot);
    }
};

/// A characteristic and its Jacobians: dx(i,j) = dV_i/dx_j, dxdot(i,j) = dV_i/dxdot_j.
struct VectorDerivatives {
    VectorXd value;
    MatrixXd dx;
    MatrixXd dxdot;

    VectorXd total_t(const VectorXd& xdot, const VectorXd& xddot) const {
        return dx * xdot + dxdot * xddot;
    }
};

namespace detail {

inline VectorXd stack(const TangentPoint& pt) {
    VectorXd z(pt.x.size() + pt.xdot.size());
    z << pt.x, pt.xdot;
    return z;
}

/// Adapts a (x, xdot) jet function to a function of the stacked vector z = (x, xdot).
template <class Fn>
auto on_stacked(const Fn& fn, Eigen::Index n) {
    return [&fn, n](auto z) { return fn(z.first(n), z.subspan(n)); };
}

inline void check_point(const LagrangianSystem& sys, const TangentPoint& pt) {
    check_dims(sys, pt.x, "x");
    check_dims(sys, pt.xdot, "xdot");
}

/// Solves W y = rhs; refuses near-singular W.
inline MatrixXd solve_velocity_hessian(const MatrixXd& w, const MatrixXd& rhs) {
    const Eigen::PartialPivLU<MatrixXd> lu(w);
    if (!(lu.rcond() > 1e-12)) throw DegeneracyError("velocity Hessian is singular or ill-conditioned");
    return lu.solve(rhs);
}

} // namespace detail

inline LagrangianDerivatives lagrangian_derivatives(const LagrangianSystem& sys,
                                                    const TangentPoint& pt) {
    detail::check_point(sys, pt);
    const Eigen::Index n = sys.n;
    const auto d = diff::second_order(detail::on_stacked(sys.lagrangian, n), detail::stack(pt));
    return {d.value, d.gradient.head(n), d.gradient.tail(n), d.hessian.bottomRightCorner(n, n),
            d.hessian.bottomLeftCorner(n, n)};
}

inline ScalarDerivatives scalar_derivatives(const JetScalarFn& fn, const TangentPoint& pt) {
    const Eigen::Index n = pt.x.size();
    const auto d = diff::first_order(detail::on_stacked(fn, n), detail::stack(pt));
    return {d.value, d.gradient.head(n), d.gradient.tail(n)};
}

inline VectorDerivatives vector_derivatives(const JetVectorFn& fn, const TangentPoint& pt) {
    const Eigen::Index n = pt.x.size();
    const auto d = diff::vector_first_order(detail::on_stacked(fn, n), detail::stack(pt));
    return {d.value, d.jacobian.leftCols(n), d.jacobian.rightCols(n)};
}

/// V^(k) with Jacobians; k = 0 is time translation (V = xdot).
inline VectorDerivatives characteristic_derivatives(const LagrangianSystem& sys, int k,
                                                    const TangentPoint& pt) {
    detail::check_symmetry_index(sys, k, true);
    detail::check_point(sys, pt);
    if (k == 0)
        return {pt.xdot, MatrixXd::Zero(sys.n, sys.n), MatrixXd::Identity(sys.n, sys.n)};
    return vector_derivatives(sys.symmetries[static_cast<std::size_t>(k - 1)].characteristic, pt);
}

/// F_k with first derivatives; k = 0 gives F = L.
inline ScalarDerivatives flux_derivatives(const LagrangianSystem& sys, int k,
                                          const TangentPoint& pt) {
    detail::check_symmetry_index(sys, k, true);
    detail::check_point(sys, pt);
    if (k == 0) return scalar_derivatives(sys.lagrangian, pt);
    return scalar_derivatives(sys.symmetries[static_cast<std::size_t>(k - 1)].flux, pt);
}

inline double lagrangian_value(const LagrangianSystem& sys, const TangentPoint& pt) {
    detail::check_point(sys, pt);
    const double v = sys.lagrangian(ConstSpan<double>(pt.x.data(), pt.x.size()),
                                    ConstSpan<double>(pt.xdot.data(), pt.xdot.size()));
    diff::detail::require_finite(v, "Lagrangian value");
    return v;
}

/// p_i = dL/dxdot_i.
inline VectorXd momentum(const LagrangianSystem& sys, const TangentPoint& pt) {
    detail::check_point(sys, pt);
    return scalar_derivatives(sys.lagrangian, pt).dxdot;
}

inline MatrixXd velocity_hessian(const LagrangianSystem& sys, const TangentPoint& pt) {
    return lagrangian_derivatives(sys, pt).w;
}

/// E_i = dL/dx_i - D_t(dL/dxdot_i), expanded on the jet.
inline VectorXd el_residual(const LagrangianSystem& sys, const Jet2Point& jet) {
    detail::check_dims(sys, jet.xddot, "xddot");
    const auto ld = lagrangian_derivatives(sys, jet.tangent());
    return ld.dx - ld.mixed * jet.xdot - ld.w * jet.xddot;
}

/// Solves E(x, xdot, xddot) = 0 for xddot.
inline VectorXd accel(const LagrangianSystem& sys, const TangentPoint& pt) {
    const auto ld = lagrangian_derivatives(sys, pt);
    return detail::solve_velocity_hessian(ld.w, ld.dx - ld.mixed * pt.xdot);
}

inline Jet2Point on_shell_jet(const LagrangianSystem& sys, const TangentPoint& pt) {
    return {pt.x, pt.xdot, accel(sys, pt)};
}

} // namespace pluriform
