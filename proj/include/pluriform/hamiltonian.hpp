#pragma once

// Legendre transform, the Hamilton functions H and H_k, and canonical brackets.

#include "pluriform/mechsys/lagrangian.hpp"
#include "pluriform/mechsys/sampler.hpp"

#include <cmath>
#include <cstdint>

namespace pluriform {

inline constexpr double kNewtonTolerance = 1e-12;
inline constexpr int kNewtonMaxIterations = 50;

inline PhasePoint legendre(const LagrangianSystem& sys, const TangentPoint& pt) {
    return {pt.x, momentum(sys, pt)};
}

/// Solves p(x, xdot) = phase.p for xdot by Newton's method, starting at xdot = p.
inline TangentPoint legendre_inverse(const LagrangianSystem& sys, const PhasePoint& phase,
                                     double tol = kNewtonTolerance,
                                     int max_iterations = kNewtonMaxIterations) {
    if (!(tol > 0.0)) throw ParameterError("legendre_inverse: tolerance must be positive");
    detail::check_dims(sys, phase.x, "x");
    detail::check_dims(sys, phase.p, "p");
    TangentPoint pt{phase.x, phase.p};
    for (int it = 0; it <= max_iterations; ++it) {
        const auto ld = lagrangian_derivatives(sys, pt);
        const VectorXd r = ld.p - phase.p;
        if (r.lpNorm<Eigen::Infinity>() < tol) return pt;
        if (it == max_iterations) break;
        pt.xdot -= detail::solve_velocity_hessian(ld.w, r);
    }
    throw InversionError("legendre_inverse: Newton iteration did not converge");
}

/// H_k(x, p) = p . V^(k) - F_k at xdot(x, p); k = 0 is the Hamiltonian H.
inline double hk_value(const LagrangianSystem& sys, int k, const PhasePoint& phase) {
    detail::check_symmetry_index(sys, k, true);
    const TangentPoint pt = legendre_inverse(sys, phase);
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return phase.p.dot(v.value) - f.value;
}

inline double hamiltonian_value(const LagrangianSystem& sys, const PhasePoint& phase) {
    return hk_value(sys, 0, phase);
}

struct PhaseGradient {
    VectorXd dx;
    VectorXd dp;
};

namespace detail {

inline PhaseGradient hk_gradients_at(const LagrangianSystem& sys, int k, const TangentPoint& pt,
                                     const VectorXd& p) {
    const auto v = characteristic_derivatives(sys, k, pt);
    const auto f = flux_derivatives(sys, k, pt);
    return {v.dx.transpose() * p - f.dx, v.value};
}

} // namespace detail

/// dH_k/dp = V^(k), dH_k/dx = (dV^(k)/dx)^T p - dF_k/dx, both at xdot(x, p).
inline PhaseGradient hk_gradients(const LagrangianSystem& sys, int k, const PhasePoint& phase) {
    detail::check_symmetry_index(sys, k, true);
    return detail::hk_gradients_at(sys, k, legendre_inverse(sys, phase), phase.p);
}

/// {H_k, H_l} = H_k,x . H_l,p - H_k,p . H_l,x; indices 0..m.
inline double poisson_bracket(const LagrangianSystem& sys, int k, int l, const PhasePoint& phase) {
    detail::check_symmetry_index(sys, k, true);
    detail::check_symmetry_index(sys, l, true);
    if (k == l) return 0.0;
    const TangentPoint pt = legendre_inverse(sys, phase);
    const auto a = detail::hk_gradients_at(sys, k, pt, phase.p);
    const auto b = detail::hk_gradients_at(sys, l, pt, phase.p);
    return a.dx.dot(b.dp) - a.dp.dot(b.dx);
}

struct BracketReport {
    int k = 0;
    int l = 0;
    int samples = 0;
    double mean_value = 0.0;    ///< estimate of c_kl
    double max_deviation = 0.0; ///< max |bracket - mean|
    int rejected = 0;           ///< samples discarded after inversion failures
};

/// Samples {H_k, H_l} over the system's box and summarizes it as a constant.
inline BracketReport bracket_constancy(const LagrangianSystem& sys, int k, int l, int sample_count,
                                       std::uint64_t seed) {
    if (sample_count < 2) throw ParameterError("bracket_constancy: need at least two samples");
    detail::check_symmetry_index(sys, k, true);
    detail::check_symmetry_index(sys, l, true);
    BracketReport rep{k, l, sample_count, 0.0, 0.0, 0};
    Sampler sampler(sys, seed);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(sample_count));
    const int max_rejections = 10 * sample_count;
    while (static_cast<int>(values.size()) < sample_count) {
        try {
            values.push_back(poisson_bracket(sys, k, l, sampler.phase()));
        } catch (const InversionError&) {
            if (++rep.rejected > max_rejections) throw;
        } catch (const DegeneracyError&) {
            if (++rep.rejected > max_rejections) throw;
        }
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    rep.mean_value = sum / sample_count;
    for (double v : values) rep.max_deviation = std::max(rep.max_deviation, std::abs(v - rep.mean_value));
    return rep;
}

struct LegendreIdentities {
    MatrixXd i1; ///< W H_pp - I
    MatrixXd i2; ///< W H_px + d2L/dxdot dx
};

/// Residuals of the differentiated Legendre relations, with H_pp = W^-1 and
/// H_px = -W^-1 M.
inline LegendreIdentities legendre_identities_residual(const LagrangianSystem& sys,
                                                       const PhasePoint& phase) {
    const TangentPoint pt = legendre_inverse(sys, phase);
    const auto ld = lagrangian_derivatives(sys, pt);
    const MatrixXd hpp = detail::solve_velocity_hessian(ld.w, MatrixXd::Identity(sys.n, sys.n));
    const MatrixXd hpx = -detail::solve_velocity_hessian(ld.w, ld.mixed);
    return {ld.w * hpp - MatrixXd::Identity(sys.n, sys.n), ld.w * hpx + ld.mixed};
}

} // namespace pluriform
