#pragma once

// Forward-mode dual numbers carrying first (Dual) or first and second (Dual2)
// partial derivatives with respect to a fixed set of seed directions.
//
// A dual with an empty derivative part is a constant; binary operations treat
// it as having zero derivatives, so literals like `0.5 * v` work in generic code.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>

namespace pluriform::diff {

/// Value plus gradient.
class Dual {
public:
    Dual() = default;
    Dual(double value) : value_(value) {} // NOLINT(google-explicit-constructor)
    Dual(double value, Eigen::VectorXd first) : value_(value), first_(std::move(first)) {}

    /// Independent variable number `index` out of `dim`.
    static Dual variable(double value, Eigen::Index index, Eigen::Index dim) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
        d(index) = 1.0;
        return {value, std::move(d)};
    }

    double value() const { return value_; }
    const Eigen::VectorXd& first() const { return first_; }
    bool is_constant() const { return first_.size() == 0; }

    /// Gradient padded to `dim` (constants yield zeros).
    Eigen::VectorXd gradient(Eigen::Index dim) const {
        return is_constant() ? Eigen::VectorXd::Zero(dim) : first_;
    }

    Dual& operator+=(const Dual& o) { return *this = *this + o; }
    Dual& operator-=(const Dual& o) { return *this = *this - o; }
    Dual& operator*=(const Dual& o) { return *this = *this * o; }
    Dual& operator/=(const Dual& o) { return *this = *this / o; }

    friend Dual operator-(const Dual& a) {
        return a.is_constant() ? Dual(-a.value_) : Dual(-a.value_, -a.first_);
    }

    friend Dual operator+(const Dual& a, const Dual& b) {
        if (a.is_constant()) return {a.value_ + b.value_, b.first_};
        if (b.is_constant()) return {a.value_ + b.value_, a.first_};
        return {a.value_ + b.value_, a.first_ + b.first_};
    }

    friend Dual operator-(const Dual& a, const Dual& b) { return a + (-b); }

    friend Dual operator*(const Dual& a, const Dual& b) {
        if (a.is_constant() && b.is_constant()) return {a.value_ * b.value_};
        if (a.is_constant()) return {a.value_ * b.value_, a.value_ * b.first_};
        if (b.is_constant()) return {a.value_ * b.value_, b.value_ * a.first_};
        return {a.value_ * b.value_, a.value_ * b.first_ + b.value_ * a.first_};
    }

    friend Dual operator/(const Dual& a, const Dual& b) { return a * reciprocal(b); }

    /// Applies f with f(value) = f0, f'(value) = f1.
    friend Dual chain(const Dual& a, double f0, double f1) {
        if (a.is_constant()) return {f0};
        return {f0, f1 * a.first_};
    }

    friend Dual reciprocal(const Dual& a) {
        const double inv = 1.0 / a.value_;
        return chain(a, inv, -inv * inv);
    }

    friend Dual exp(const Dual& a) {
        const double e = std::exp(a.value_);
        return chain(a, e, e);
    }

    friend Dual sqrt(const Dual& a) {
        const double s = std::sqrt(a.value_);
        return chain(a, s, 0.5 / s);
    }

    friend Dual pow(const Dual& a, int n) {
        if (n == 0) return {1.0};
        return chain(a, std::pow(a.value_, n), n * std::pow(a.value_, n - 1));
    }

private:
    double value_ = 0.0;
    Eigen::VectorXd first_;
};

/// Value, gradient and (symmetric) Hessian.
class Dual2 {
public:
    Dual2() = default;
    Dual2(double value) : value_(value) {} // NOLINT(google-explicit-constructor)
    Dual2(double value, Eigen::VectorXd first, Eigen::MatrixXd second)
        : value_(value), first_(std::move(first)), second_(std::move(second)) {}

    static Dual2 variable(double value, Eigen::Index index, Eigen::Index dim) {
        Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
        d(index) = 1.0;
        return {value, std::move(d), Eigen::MatrixXd::Zero(dim, dim)};
    }

    double value() const { return value_; }
    const Eigen::VectorXd& first() const { return first_; }
    const Eigen::MatrixXd& second() const { return second_; }
    bool is_constant() const { return first_.size() == 0; }

    Eigen::VectorXd gradient(Eigen::Index dim) const {
        return is_constant() ? Eigen::VectorXd::Zero(dim) : first_;
    }
    Eigen::MatrixXd hessian(Eigen::Index dim) const {
        return is_constant() ? Eigen::MatrixXd::Zero(dim, dim) : second_;
    }

    Dual2& operator+=(const Dual2& o) { return *this = *this + o; }
    Dual2& operator-=(const Dual2& o) { return *this = *this - o; }
    Dual2& operator*=(const Dual2& o) { return *this = *this * o; }
    Dual2& operator/=(const Dual2& o) { return *this = *this / o; }

    friend Dual2 operator-(const Dual2& a) {
        return a.is_constant() ? Dual2(-a.value_) : Dual2(-a.value_, -a.first_, -a.second_);
    }

    friend Dual2 operator+(const Dual2& a, const Dual2& b) {
        if (a.is_constant()) return {a.value_ + b.value_, b.first_, b.second_};
        if (b.is_constant()) return {a.value_ + b.value_, a.first_, a.second_};
        return {a.value_ + b.value_, a.first_ + b.first_, a.second_ + b.second_};
    }

    friend Dual2 operator-(const Dual2& a, const Dual2& b) { return a + (-b); }

    friend Dual2 operator*(const Dual2& a, const Dual2& b) {
        if (a.is_constant() && b.is_constant()) return {a.value_ * b.value_};
        if (a.is_constant())
            return {a.value_ * b.value_, a.value_ * b.first_, a.value_ * b.second_};
        if (b.is_constant())
            return {a.value_ * b.value_, b.value_ * a.first_, b.value_ * a.second_};
        const Eigen::MatrixXd cross = a.first_ * b.first_.transpose();
        return {a.value_ * b.value_, a.value_ * b.first_ + b.value_ * a.first_,
                a.value_ * b.second_ + b.value_ * a.second_ + cross + cross.transpose()};
    }

    friend Dual2 operator/(const Dual2& a, const Dual2& b) { return a * reciprocal(b); }

    /// Applies f with f(value) = f0, f' = f1, f'' = f2.
    friend Dual2 chain(const Dual2& a, double f0, double f1, double f2) {
        if (a.is_constant()) return {f0};
        return {f0, f1 * a.first_, f1 * a.second_ + f2 * (a.first_ * a.first_.transpose())};
    }

    friend Dual2 reciprocal(const Dual2& a) {
        const double inv = 1.0 / a.value_;
        return chain(a, inv, -inv * inv, 2.0 * inv * inv * inv);
    }

    friend Dual2 exp(const Dual2& a) {
        const double e = std::exp(a.value_);
        return chain(a, e, e, e);
    }

    friend Dual2 sqrt(const Dual2& a) {
        const double s = std::sqrt(a.value_);
        return chain(a, s, 0.5 / s, -0.25 / (s * a.value_));
    }

    friend Dual2 pow(const Dual2& a, int n) {
        if (n == 0) return {1.0};
        const double x = a.value_;
        const double f2 = n == 1 ? 0.0 : n * (n - 1) * std::pow(x, n - 2);
        return chain(a, std::pow(x, n), n * std::pow(x, n - 1), f2);
    }

private:
    double value_ = 0.0;
    Eigen::VectorXd first_;
    Eigen::MatrixXd second_;
};

// Uniform spelling for generic code: `ipow(s, n)` works for double and both duals.
inline double ipow(double x, int n) { return std::pow(x, n); }
inline Dual ipow(const Dual& x, int n) { return pow(x, n); }
inline Dual2 ipow(const Dual2& x, int n) { return pow(x, n); }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.value(); }
inline double value_of(const Dual2& x) { return x.value(); }

} // namespace pluriform::diff
