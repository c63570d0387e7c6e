#pragma once

// Multi-time flows of H, H_1..H_m in phase space, the coefficients of the
// pluri-Lagrangian 1-form, actions along staircase paths, and the multi-time
// Euler-Lagrange residuals and off-shell identities on extended jets.

#include "pluriform/hamiltonian.hpp"
#include "pluriform/noether.hpp"

#include <cmath>
#include <vector>

namespace pluriform {

// ---------------------------------------------------------------------------
// Phase-space flows

struct PathSegment {
    int axis = 0;          ///< 0 = t, k >= 1 = t_k
    double duration = 0.0; ///< signed
};

struct MultiTimePath {
    std::vector<PathSegment> segments;
};

struct TrajectoryNode {
    VectorXd times;     ///< (t, t_1, ..., t_m)
    PhasePoint phase;
    VectorXd integrals; ///< (H, H_1, ..., H_m) at the node
};

struct Trajectory {
    std::vector<TrajectoryNode> nodes;
    double step = 0.0;
};

/// Rectangle (+k a, +l b, -k a, -l b) based at `base`.
struct LoopSpec {
    int k = 0;
    int l = 1;
    double a = 0.0;
    double b = 0.0;
    PhasePoint base;
    double step = 1e-3;
};

inline constexpr double kDefaultStep = 1e-3;

/// (dH_a/dp, -dH_a/dx).
inline PhaseGradient flow_field(const LagrangianSystem& sys, int axis, const PhasePoint& phase) {
    const auto g = hk_gradients(sys, axis, phase);
    return {g.dp, -g.dx};
}

inline PhasePoint rk4_step(const LagrangianSystem& sys, int axis, const PhasePoint& z, double h) {
    const auto shifted = [&](const PhaseGradient& d, double s) {
        return PhasePoint{z.x + s * d.dx, z.p + s * d.dp};
    };
    const auto k1 = flow_field(sys, axis, z);
    const auto k2 = flow_field(sys, axis, shifted(k1, 0.5 * h));
    const auto k3 = flow_field(sys, axis, shifted(k2, 0.5 * h));
    const auto k4 = flow_field(sys, axis, shifted(k3, h));
    return {z.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
            z.p + (h / 6.0) * (k1.dp + 2.0 * k2.dp + 2.0 * k3.dp + k4.dp)};
}

namespace detail {

/// Number of uniform steps covering |duration| with steps no longer than h;
/// always even so that Simpson's rule applies to the node sequence.
inline long segment_steps(double duration, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("step size must be positive");
    if (!std::isfinite(duration)) throw ParameterError("segment duration must be finite");
    if (duration == 0.0) return 0;
    const double raw = std::ceil(std::abs(duration) / h - 1e-9);
    if (raw > 1e8) throw ParameterError("step size too small for segment duration");
    long n = std::max(1L, static_cast<long>(raw));
    if (n % 2 != 0) ++n;
    return n;
}

inline void check_axis(const LagrangianSystem& sys, int axis) { check_symmetry_index(sys, axis, true); }

} // namespace detail

/// Nodes along one axis-parallel segment, including the starting point.
inline std::vector<PhasePoint> integrate_segment(const LagrangianSystem& sys, int axis,
                                                 const PhasePoint& phase, double duration,
                                                 double h = kDefaultStep) {
    detail::check_axis(sys, axis);
    const long n = detail::segment_steps(duration, h);
    std::vector<PhasePoint> out{phase};
    out.reserve(static_cast<std::size_t>(n) + 1);
    const double s = n == 0 ? 0.0 : duration / static_cast<double>(n);
    for (long i = 0; i < n; ++i) out.push_back(rk4_step(sys, axis, out.back(), s));
    return out;
}

inline VectorXd node_integrals(const LagrangianSystem& sys, const PhasePoint& phase) {
    const TangentPoint pt = legendre_inverse(sys, phase);
    VectorXd out(sys.symmetry_count() + 1);
    for (int k = 0; k <= sys.symmetry_count(); ++k) out(k) = noether_integral(sys, k, pt);
    return out;
}

inline Trajectory integrate_path(const LagrangianSystem& sys, const MultiTimePath& path,
                                 const PhasePoint& phase0, double h = kDefaultStep) {
    Trajectory traj;
    traj.step = h;
    VectorXd times = VectorXd::Zero(sys.symmetry_count() + 1);
    traj.nodes.push_back({times, phase0, node_integrals(sys, phase0)});
    for (const auto& seg : path.segments) {
        const auto pts = integrate_segment(sys, seg.axis, traj.nodes.back().phase, seg.duration, h);
        const double s = pts.size() > 1 ? seg.duration / static_cast<double>(pts.size() - 1) : 0.0;
        const double start = times(seg.axis);
        for (std::size_t i = 1; i < pts.size(); ++i) {
            times(seg.axis) = start + s * static_cast<double>(i);
            traj.nodes.push_back({times, pts[i], node_integrals(sys, pts[i])});
        }
        times(seg.axis) = start + seg.duration;
        if (pts.size() > 1) traj.nodes.back().times(seg.axis) = times(seg.axis);
    }
    return traj;
}

namespace detail {

inline PhasePoint flow_endpoint(const LagrangianSystem& sys, int axis, const PhasePoint& z,
                                double duration, double h) {
    return integrate_segment(sys, axis, z, duration, h).back();
}

} // namespace detail

/// Distance between the endpoints of (k then l) and (l then k), each for delta.
inline double commutativity_defect(const LagrangianSystem& sys, int k, int l,
                                   const PhasePoint& phase0, double delta, double h = kDefaultStep) {
    detail::check_axis(sys, k);
    detail::check_axis(sys, l);
    const PhasePoint kl = detail::flow_endpoint(
        sys, l, detail::flow_endpoint(sys, k, phase0, delta, h), delta, h);
    const PhasePoint lk = detail::flow_endpoint(
        sys, k, detail::flow_endpoint(sys, l, phase0, delta, h), delta, h);
    return std::sqrt((kl.x - lk.x).squaredNorm() + (kl.p - lk.p).squaredNorm());
}

// ---------------------------------------------------------------------------
// Coefficients of the 1-form and actions

/// L_k = p . x_{t_k} - J_k on the tangent side.
inline double coeff_Lk(const LagrangianSystem& sys, int k, const TangentPoint& pt,
                       const VectorXd& xtk) {
    detail::check_dims(sys, xtk, "x_t");
    return momentum(sys, pt).dot(xtk) - noether_integral(sys, k, pt);
}

/// Lambda_k = p . x_{t_k} - H_k on the phase-space side.
inline double coeff_Lambda_k(const LagrangianSystem& sys, int k, const PhasePoint& phase,
                             const VectorXd& xtk) {
    detail::check_dims(sys, xtk, "x_t");
    return phase.p.dot(xtk) - hk_value(sys, k, phase);
}

namespace detail {

/// Lambda_axis with x_t supplied by the flow, i.e. its value on solutions.
inline double on_shell_lambda(const LagrangianSystem& sys, int axis, const PhasePoint& phase) {
    const TangentPoint pt = legendre_inverse(sys, phase);
    const auto v = characteristic_derivatives(sys, axis, pt);
    const auto f = flux_derivatives(sys, axis, pt);
    const double hk = phase.p.dot(v.value) - f.value;
    return phase.p.dot(v.value) - hk;
}

inline double simpson(const LagrangianSystem& sys, int axis, const std::vector<PhasePoint>& pts,
                      double duration) {
    const std::size_t n = pts.size() - 1;
    if (n == 0) return 0.0;
    const double s = duration / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        sum += w * on_shell_lambda(sys, axis, pts[i]);
    }
    return sum * s / 3.0;
}

} // namespace detail

/// Action of the 1-form along a staircase path traced by the flows.
inline double action_along_path(const LagrangianSystem& sys, const MultiTimePath& path,
                                const PhasePoint& phase0, double h = kDefaultStep) {
    double action = 0.0;
    PhasePoint z = phase0;
    for (const auto& seg : path.segments) {
        const auto pts = integrate_segment(sys, seg.axis, z, seg.duration, h);
        action += detail::simpson(sys, seg.axis, pts, seg.duration);
        z = pts.back();
    }
    return action;
}

/// Action around the rectangle; equals c_kl a b on solutions.
inline double loop_closedness_defect(const LagrangianSystem& sys, const LoopSpec& loop) {
    if (loop.k == loop.l) throw ParameterError("loop plane needs two distinct axes");
    if (loop.a < 0.0 || loop.b < 0.0) throw ParameterError("loop sides must be non-negative");
    if (loop.a == 0.0 || loop.b == 0.0) return 0.0;
    const MultiTimePath path{{{loop.k, loop.a}, {loop.l, loop.b}, {loop.k, -loop.a}, {loop.l, -loop.b}}};
    return action_along_path(sys, path, loop.base, loop.step);
}

// ---------------------------------------------------------------------------
// Extended jets

/// Extended jet of a joint solution through pt: xddot = accel, x_{t_k} = V^(k),
/// (xdot)_{t_k} = D_t V^(k).
inline ExtendedJet on_shell_extended_jet(const LagrangianSystem& sys, const TangentPoint& pt) {
    const Jet2Point jet = on_shell_jet(sys, pt);
    ExtendedJet e{jet.x, jet.xdot, jet.xddot, {}, {}};
    for (int k = 1; k <= sys.symmetry_count(); ++k) {
        const auto v = characteristic_derivatives(sys, k, pt);
        e.xt.push_back(v.value);
        e.xdott.push_back(v.total_t(jet.xdot, jet.xddot));
    }
    return e;
}

namespace detail {

inline void check_extended(const LagrangianSystem& sys, const ExtendedJet& e) {
    check_point(sys, e.tangent());
    check_dims(sys, e.xddot, "xddot");
    if (static_cast<int>(e.xt.size()) != sys.symmetry_count() ||
        static_cast<int>(e.xdott.size()) != sys.symmetry_count())
        throw ParameterError("extended jet needs one x_t and xdot_t row per symmetry");
    for (const auto& r : e.xt) check_dims(sys, r, "x_t");
    for (const auto& r : e.xdott) check_dims(sys, r, "xdot_t");
}

inline const VectorXd& xt_row(const ExtendedJet& e, int k) { return e.xt[static_cast<std::size_t>(k - 1)]; }
inline const VectorXd& xdott_row(const ExtendedJet& e, int k) {
    return e.xdott[static_cast<std::size_t>(k - 1)];
}

/// D_{t_k} p = M x_{t_k} + W (xdot)_{t_k}.
inline VectorXd momentum_tk(const LagrangianDerivatives& ld, const ExtendedJet& e, int k) {
    return ld.mixed * xt_row(e, k) + ld.w * xdott_row(e, k);
}

inline VectorXd multitime_el(const LagrangianSystem& sys, const LagrangianDerivatives& ld, int k,
                             const ExtendedJet& e) {
    const TangentPoint pt = e.tangent();
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    const VectorXd dlk_dx = ld.mixed.transpose() * (xt_row(e, k) - v.value) - v.dx.transpose() * ld.p + f.dx;
    return dlk_dx - momentum_tk(ld, e, k);
}

} // namespace detail

/// E^(k) = dL_k/dx - D_{t_k} p on the extended jet; k in 1..m.
inline VectorXd multitime_el_residual(const LagrangianSystem& sys, int k, const ExtendedJet& e) {
    detail::check_symmetry_index(sys, k, false);
    detail::check_extended(sys, e);
    return detail::multitime_el(sys, lagrangian_derivatives(sys, e.tangent()), k, e);
}

/// D_{t_k}L - D_t L_k - (x_{t_k} - V^(k)) . E at an arbitrary extended jet.
inline double offshell_identity_1(const LagrangianSystem& sys, int k, const ExtendedJet& e) {
    detail::check_symmetry_index(sys, k, false);
    detail::check_extended(sys, e);
    const TangentPoint pt = e.tangent();
    const auto ld = lagrangian_derivatives(sys, pt);
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto j = noether_integral_derivatives(sys, k, pt);
    const VectorXd& xt = detail::xt_row(e, k);
    const VectorXd& xdt = detail::xdott_row(e, k);
    const double dk_l = ld.dx.dot(xt) + ld.p.dot(xdt);
    const VectorXd dt_p = ld.mixed * e.xdot + ld.w * e.xddot;
    const double dt_lk = dt_p.dot(xt) + ld.p.dot(xdt) - j.total_t(e.xdot, e.xddot);
    const VectorXd el = ld.dx - dt_p;
    return dk_l - dt_lk - (xt - v.value).dot(el);
}

/// D_{t_k}L_l - D_{t_l}L_k minus c_kl, the E^(k)/E^(l) bilinear terms and the
/// mixed-Hessian term, at an arbitrary extended jet. The p . x_{t_k t_l} parts
/// of both derivatives cancel and are left out.
inline double offshell_identity_2(const LagrangianSystem& sys, int k, int l, const ExtendedJet& e,
                                  double c_kl) {
    detail::check_symmetry_index(sys, k, false);
    detail::check_symmetry_index(sys, l, false);
    if (k == l) throw ParameterError("offshell_identity_2 needs k != l");
    detail::check_extended(sys, e);
    const TangentPoint pt = e.tangent();
    const auto ld = lagrangian_derivatives(sys, pt);
    const auto vk = characteristic_derivatives(sys, k, pt);
    const auto vl = characteristic_derivatives(sys, l, pt);
    const auto jk = noether_integral_derivatives(sys, k, pt);
    const auto jl = noether_integral_derivatives(sys, l, pt);
    const VectorXd& xk = detail::xt_row(e, k);
    const VectorXd& xl = detail::xt_row(e, l);
    const VectorXd& dxk = detail::xdott_row(e, k);
    const VectorXd& dxl = detail::xdott_row(e, l);

    const double dk_ll = detail::momentum_tk(ld, e, k).dot(xl) - (jl.dx.dot(xk) + jl.dxdot.dot(dxk));
    const double dl_lk = detail::momentum_tk(ld, e, l).dot(xk) - (jk.dx.dot(xl) + jk.dxdot.dot(dxl));

    const VectorXd uk = xk - vk.value;
    const VectorXd ul = xl - vl.value;
    const double rhs = c_kl + uk.dot(detail::multitime_el(sys, ld, l, e)) -
                       ul.dot(detail::multitime_el(sys, ld, k, e)) +
                       ul.dot((ld.mixed.transpose() - ld.mixed) * uk);
    return dk_ll - dl_lk - rhs;
}

} // namespace pluriform
