#pragma once

// Exact derivatives of generic callables via the dual types, plus central
// finite-difference counterparts used as an independent oracle in tests.
//
// Callables take `std::span<const S>` and return `S` (scalar functions) or
// `std::vector<S>` (vector functions), for S in {double, Dual, Dual2}.

#include "pluriform/diff/dual.hpp"
#include "pluriform/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace pluriform::diff {

struct FirstOrder {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

struct SecondOrder {
    double value = 0.0;
    Eigen::VectorXd gradient;
    Eigen::MatrixXd hessian;
};

struct VectorFirstOrder {
    Eigen::VectorXd value;
    Eigen::MatrixXd jacobian; ///< row i is the gradient of component i
};

namespace detail {

template <class S>
std::vector<S> seed(const Eigen::VectorXd& v) {
    std::vector<S> out;
    out.reserve(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(S::variable(v(i), i, v.size()));
    return out;
}

inline void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) throw DomainError(std::string("non-finite ") + what);
}

template <class Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
    if (!m.allFinite()) throw DomainError(std::string("non-finite ") + what);
}

} // namespace detail

template <class F>
FirstOrder first_order(F&& f, const Eigen::VectorXd& v) {
    const auto args = detail::seed<Dual>(v);
    const Dual r = f(std::span<const Dual>(args));
    FirstOrder out{r.value(), r.gradient(v.size())};
    detail::require_finite(out.value, "function value");
    detail::require_finite(out.gradient, "gradient");
    return out;
}

/// Value, gradient and Hessian in one pass. The Hessian is symmetrized.
template <class F>
SecondOrder second_order(F&& f, const Eigen::VectorXd& v) {
    const auto args = detail::seed<Dual2>(v);
    const Dual2 r = f(std::span<const Dual2>(args));
    Eigen::MatrixXd h = r.hessian(v.size());
    SecondOrder out{r.value(), r.gradient(v.size()), 0.5 * (h + h.transpose())};
    detail::require_finite(out.value, "function value");
    detail::require_finite(out.gradient, "gradient");
    detail::require_finite(out.hessian, "hessian");
    return out;
}

template <class F>
VectorFirstOrder vector_first_order(F&& f, const Eigen::VectorXd& v) {
    const auto args = detail::seed<Dual>(v);
    const std::vector<Dual> r = f(std::span<const Dual>(args));
    VectorFirstOrder out{Eigen::VectorXd(static_cast<Eigen::Index>(r.size())),
                         Eigen::MatrixXd(static_cast<Eigen::Index>(r.size()), v.size())};
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        out.value(row) = r[i].value();
        out.jacobian.row(row) = r[i].gradient(v.size()).transpose();
    }
    detail::require_finite(out.value, "function value");
    detail::require_finite(out.jacobian, "jacobian");
    return out;
}

template <class F>
Eigen::VectorXd grad(F&& f, const Eigen::VectorXd& v) {
    return first_order(std::forward<F>(f), v).gradient;
}

template <class F>
Eigen::MatrixXd jacobian(F&& f, const Eigen::VectorXd& v) {
    return vector_first_order(std::forward<F>(f), v).jacobian;
}

template <class F>
Eigen::MatrixXd hessian(F&& f, const Eigen::VectorXd& v) {
    return second_order(std::forward<F>(f), v).hessian;
}

// ---------------------------------------------------------------------------
// Finite differences (central stencils). Only plain double evaluation is used.

inline constexpr double kFirstOrderStep = 1e-5;
inline constexpr double kSecondOrderStep = 1e-4;

namespace detail {

template <class F>
double eval_scalar(F& f, const Eigen::VectorXd& v) {
    const std::vector<double> a(v.data(), v.data() + v.size());
    return f(std::span<const double>(a));
}

template <class F>
Eigen::VectorXd eval_vector(F& f, const Eigen::VectorXd& v) {
    const std::vector<double> a(v.data(), v.data() + v.size());
    const std::vector<double> r = f(std::span<const double>(a));
    return Eigen::Map<const Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
}

} // namespace detail

template <class F>
Eigen::VectorXd fd_grad(F f, const Eigen::VectorXd& v, double step = kFirstOrderStep) {
    if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
    Eigen::VectorXd g(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Eigen::VectorXd hi = v, lo = v;
        hi(i) += step;
        lo(i) -= step;
        g(i) = (detail::eval_scalar(f, hi) - detail::eval_scalar(f, lo)) / (2.0 * step);
    }
    return g;
}

template <class F>
Eigen::MatrixXd fd_jacobian(F f, const Eigen::VectorXd& v, double step = kFirstOrderStep) {
    if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
    Eigen::MatrixXd j;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        Eigen::VectorXd hi = v, lo = v;
        hi(i) += step;
        lo(i) -= step;
        const Eigen::VectorXd col =
            (detail::eval_vector(f, hi) - detail::eval_vector(f, lo)) / (2.0 * step);
        if (i == 0) j.resize(col.size(), v.size());
        j.col(i) = col;
    }
    return j;
}

template <class F>
Eigen::MatrixXd fd_hessian(F f, const Eigen::VectorXd& v, double step = kSecondOrderStep) {
    if (!(step > 0.0)) throw ParameterError("finite-difference step must be positive");
    const Eigen::Index d = v.size();
    Eigen::MatrixXd h(d, d);
    const double f0 = detail::eval_scalar(f, v);
    for (Eigen::Index i = 0; i < d; ++i) {
        Eigen::VectorXd hi = v, lo = v;
        hi(i) += step;
        lo(i) -= step;
        h(i, i) = (detail::eval_scalar(f, hi) - 2.0 * f0 + detail::eval_scalar(f, lo)) /
                  (step * step);
        for (Eigen::Index j = i + 1; j < d; ++j) {
            Eigen::VectorXd pp = v, pm = v, mp = v, mm = v;
            pp(i) += step; pp(j) += step;
            pm(i) += step; pm(j) -= step;
            mp(i) -= step; mp(j) += step;
            mm(i) -= step; mm(j) -= step;
            h(i, j) = (detail::eval_scalar(f, pp) - detail::eval_scalar(f, pm) -
                       detail::eval_scalar(f, mp) + detail::eval_scalar(f, mm)) /
                      (4.0 * step * step);
            h(j, i) = h(i, j);
        }
    }
    return h;
}

} // namespace pluriform::diff
