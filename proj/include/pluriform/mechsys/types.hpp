#pragma once

#include "pluriform/diff/dual.hpp"
#include "pluriform/errors.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pluriform {

using Eigen::MatrixXd;
using Eigen::VectorXd;

template <class S>
using ConstSpan = std::span<const S>;

/// Scalar function f(x, xdot) usable with double, Dual and Dual2 arguments.
///
/// Construct from a generic lambda `[](auto x, auto xdot) { ... }`; the lambda is
/// instantiated once per scalar type.
class JetScalarFn {
public:
    JetScalarFn() = default;

    template <class F>
    explicit JetScalarFn(F f) : plain_(f), first_(f), second_(f) {}

    double operator()(ConstSpan<double> x, ConstSpan<double> xdot) const { return plain_(x, xdot); }
    diff::Dual operator()(ConstSpan<diff::Dual> x, ConstSpan<diff::Dual> xdot) const {
        return first_(x, xdot);
    }
    diff::Dual2 operator()(ConstSpan<diff::Dual2> x, ConstSpan<diff::Dual2> xdot) const {
        return second_(x, xdot);
    }

    explicit operator bool() const { return static_cast<bool>(plain_); }

private:
    std::function<double(ConstSpan<double>, ConstSpan<double>)> plain_;
    std::function<diff::Dual(ConstSpan<diff::Dual>, ConstSpan<diff::Dual>)> first_;
    std::function<diff::Dual2(ConstSpan<diff::Dual2>, ConstSpan<diff::Dual2>)> second_;
};

/// Vector-valued counterpart of JetScalarFn (first order only).
class JetVectorFn {
public:
    JetVectorFn() = default;

    template <class F>
    explicit JetVectorFn(F f) : plain_(f), first_(f) {}

    std::vector<double> operator()(ConstSpan<double> x, ConstSpan<double> xdot) const {
        return plain_(x, xdot);
    }
    std::vector<diff::Dual> operator()(ConstSpan<diff::Dual> x, ConstSpan<diff::Dual> xdot) const {
        return first_(x, xdot);
    }

    explicit operator bool() const { return static_cast<bool>(plain_); }

private:
    std::function<std::vector<double>(ConstSpan<double>, ConstSpan<double>)> plain_;
    std::function<std::vector<diff::Dual>(ConstSpan<diff::Dual>, ConstSpan<diff::Dual>)> first_;
};

struct TangentPoint {
    VectorXd x;
    VectorXd xdot;
};

/// Second jet; xddot is an independent coordinate, so off-shell points are allowed.
struct Jet2Point {
    VectorXd x;
    VectorXd xdot;
    VectorXd xddot;

    TangentPoint tangent() const { return {x, xdot}; }
};

/// Jet with one row of multi-time partials per symmetry:
/// xt[k-1] = x_{t_k}, xdott[k-1] = (xdot)_{t_k}.
struct ExtendedJet {
    VectorXd x;
    VectorXd xdot;
    VectorXd xddot;
    std::vector<VectorXd> xt;
    std::vector<VectorXd> xdott;

    TangentPoint tangent() const { return {x, xdot}; }
    Jet2Point jet2() const { return {x, xdot, xddot}; }
};

struct PhasePoint {
    VectorXd x;
    VectorXd p;
};

/// Variational symmetry: characteristic V(x, xdot) and flux F(x, xdot).
struct SymmetrySpec {
    std::string name;
    JetVectorFn characteristic;
    JetScalarFn flux;
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Per-coordinate boxes for random jet sampling.
struct SampleBox {
    std::vector<Interval> x;
    std::vector<Interval> xdot;
    std::vector<Interval> xddot;
    double min_x_norm = 0.0; ///< samples with |x| below this are rejected

    static SampleBox uniform(int n, Interval x, Interval xdot, Interval xddot) {
        const auto size = static_cast<std::size_t>(n);
        return {std::vector<Interval>(size, x), std::vector<Interval>(size, xdot),
                std::vector<Interval>(size, xddot), 0.0};
    }
};

using RijFn = std::function<MatrixXd(int k, int l, const TangentPoint&)>;
using CommutatorFn = std::function<VectorXd(int k, int l, const Jet2Point&)>;
using MultiTimeElFn = std::function<VectorXd(int k, const ExtendedJet&)>;
using IntegralFn = std::function<double(int k, const TangentPoint&)>;

/// A Lagrangian system with its known variational symmetries.
///
/// Symmetries are indexed 1..m in the public API; index 0 stands for time
/// translation (characteristic xdot, flux L) wherever an operation accepts it.
/// The reference_* closures hold independently written closed forms for
/// cross-checking the general machinery.
struct LagrangianSystem {
    std::string name;
    int n = 0;
    JetScalarFn lagrangian;
    std::vector<SymmetrySpec> symmetries;
    SampleBox sample_box;

    std::optional<RijFn> reference_rij;
    std::optional<CommutatorFn> reference_commutator;
    std::optional<MultiTimeElFn> reference_multitime_el;
    std::optional<IntegralFn> reference_integral;

    int symmetry_count() const { return static_cast<int>(symmetries.size()); }
};

namespace detail {

inline void check_symmetry_index(const LagrangianSystem& sys, int k, bool allow_time) {
    const int lo = allow_time ? 0 : 1;
    if (k < lo || k > sys.symmetry_count())
        throw IndexError("symmetry index " + std::to_string(k) + " out of range [" +
                         std::to_string(lo) + ", " + std::to_string(sys.symmetry_count()) +
                         "] for " + sys.name);
}

inline void check_dims(const LagrangianSystem& sys, const VectorXd& v, const char* what) {
    if (v.size() != sys.n)
        throw ParameterError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                             ", expected " + std::to_string(sys.n));
}

} // namespace detail

} // namespace pluriform
