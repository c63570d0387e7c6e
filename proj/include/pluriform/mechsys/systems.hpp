#pragma once

// Built-in systems: Kepler (Runge-Lenz symmetries), Toda lattice (first two
// commuting symmetries), and the one-dimensional harmonic oscillator.

#include "pluriform/mechsys/types.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

namespace pluriform {

namespace detail {

template <class Span>
using scalar_of = std::remove_cvref_t<decltype(std::declval<Span>()[0])>;

} // namespace detail

// ---------------------------------------------------------------------------
// Kepler

enum class KeplerSymmetries {
    first_only, ///< v1 only (the system's single commuting symmetry)
    runge_lenz, ///< v1, v2, v3: one per Runge-Lenz component (not commuting)
};

namespace detail {

/// Runge-Lenz characteristic for axis a; b, c are the two other axes.
struct KeplerAxes {
    int a, b, c;
};

inline KeplerAxes kepler_axes(int axis) {
    switch (axis) {
    case 0: return {0, 1, 2};
    case 1: return {1, 0, 2};
    default: return {2, 0, 1};
    }
}

template <class S>
S kepler_radius(ConstSpan<S> x) {
    using std::sqrt;
    return sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
}

inline double kepler_norm(const VectorXd& x) { return x.norm(); }

} // namespace detail

/// Kepler problem with unit mass, L = |xdot|^2 / 2 + alpha / |x|.
///
/// The attractive potential sign is the one for which D_{v1}L = D_t F_1 holds with
/// the flux F_1 = xdot_1 (x_2 xdot_2 + x_3 xdot_3) - x_1 (xdot_2^2 + xdot_3^2) - alpha x_1/|x|.
inline LagrangianSystem make_kepler(double alpha,
                                    KeplerSymmetries which = KeplerSymmetries::first_only) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("kepler: alpha must be positive and finite");

    LagrangianSystem sys;
    sys.name = "kepler";
    sys.n = 3;
    sys.lagrangian = JetScalarFn([alpha](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        const S kinetic = 0.5 * (xd[0] * xd[0] + xd[1] * xd[1] + xd[2] * xd[2]);
        return kinetic + alpha / detail::kepler_radius<S>(x);
    });

    const int count = which == KeplerSymmetries::first_only ? 1 : 3;
    for (int axis = 0; axis < count; ++axis) {
        const auto [a, b, c] = detail::kepler_axes(axis);
        SymmetrySpec sym;
        sym.name = "runge_lenz_" + std::to_string(axis + 1);
        sym.characteristic = JetVectorFn([a, b, c](auto x, auto xd) {
            using S = detail::scalar_of<decltype(x)>;
            std::vector<S> v(3);
            v[a] = x[b] * xd[b] + x[c] * xd[c];
            v[b] = x[b] * xd[a] - 2.0 * x[a] * xd[b];
            v[c] = x[c] * xd[a] - 2.0 * x[a] * xd[c];
            return v;
        });
        sym.flux = JetScalarFn([alpha, a, b, c](auto x, auto xd) {
            using S = detail::scalar_of<decltype(x)>;
            return xd[a] * (x[b] * xd[b] + x[c] * xd[c]) - x[a] * (xd[b] * xd[b] + xd[c] * xd[c]) -
                   alpha * x[a] / detail::kepler_radius<S>(x);
        });
        sys.symmetries.push_back(std::move(sym));
    }

    sys.sample_box = SampleBox::uniform(3, {-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0});
    sys.sample_box.min_x_norm = 0.5;

    // Runge-Lenz components in closed form: J_a = xdot_a (x.xdot - x_a xdot_a) - x_a (|xdot|^2 - xdot_a^2) + alpha x_a/|x|.
    sys.reference_integral = [alpha, count](int k, const TangentPoint& pt) {
        if (k < 1 || k > count) throw IndexError("kepler reference integral index");
        const auto [a, b, c] = detail::kepler_axes(k - 1);
        const VectorXd& x = pt.x;
        const VectorXd& v = pt.xdot;
        return v(a) * (x(b) * v(b) + x(c) * v(c)) - x(a) * (v(b) * v(b) + v(c) * v(c)) +
               alpha * x(a) / detail::kepler_norm(x);
    };

    // Reference closed form for the first component of [v1, v2]; the other components are not
    // available in closed form and are reported as NaN.
    if (count >= 2) {
        sys.reference_commutator = [](int k, int l, const Jet2Point& jet) {
            VectorXd out = VectorXd::Constant(3, std::numeric_limits<double>::quiet_NaN());
            if (k == l) return VectorXd(VectorXd::Zero(3));
            if (!((k == 1 && l == 2) || (k == 2 && l == 1))) return out;
            const VectorXd& x = jet.x;
            const VectorXd& v = jet.xdot;
            const VectorXd& a = jet.xddot;
            const double c1 = -a(1) * (2.0 * x(0) * x(0) - 2.0 * x(1) * x(1) - x(2) * x(2)) -
                              x(1) * x(2) * a(2) -
                              x(1) * (3.0 * v(0) * v(0) + v(1) * v(1) + v(2) * v(2)) +
                              2.0 * x(0) * v(0) * v(1);
            out(0) = k == 1 ? c1 : -c1;
            return out;
        };
    }

    // Multi-time Euler-Lagrange expressions for L_1 in closed form.
    sys.reference_multitime_el = [alpha](int k, const ExtendedJet& e) {
        if (k != 1) throw IndexError("kepler reference multi-time EL exists for k = 1 only");
        const VectorXd& x = e.x;
        const VectorXd& v = e.xdot;
        const VectorXd& vt = e.xdott.at(0);
        const double r = detail::kepler_norm(x);
        const double r3 = r * r * r;
        VectorXd out(3);
        out(0) = v(1) * v(1) + v(2) * v(2) - alpha * (x(1) * x(1) + x(2) * x(2)) / r3 - vt(0);
        out(1) = -v(0) * v(1) + alpha * x(0) * x(1) / r3 - vt(1);
        out(2) = -v(0) * v(2) + alpha * x(0) * x(2) / r3 - vt(2);
        return out;
    };
    return sys;
}

// ---------------------------------------------------------------------------
// Toda lattice

enum class TodaBoundary { periodic, open_end };

namespace detail {

/// Index arithmetic for the lattice. Open ends: every exponential reaching a
/// virtual site 0 or N+1 vanishes and virtual velocities are zero.
struct TodaIndexing {
    int n;
    bool periodic;

    bool inside(int i) const { return periodic || (i >= 0 && i < n); }
    int wrap(int i) const { return ((i % n) + n) % n; }

    /// e^{x_j - x_i} for 0-based (possibly virtual) sites.
    template <class S>
    S expdiff(ConstSpan<S> x, int i, int j) const {
        using std::exp;
        if (!inside(i) || !inside(j)) return S(0.0);
        return exp(x[wrap(j)] - x[wrap(i)]);
    }
    double expdiff(const VectorXd& x, int i, int j) const {
        if (!inside(i) || !inside(j)) return 0.0;
        return std::exp(x(wrap(j)) - x(wrap(i)));
    }

    template <class S>
    S vel(ConstSpan<S> xd, int i) const {
        if (!inside(i)) return S(0.0);
        return xd[wrap(i)];
    }
    double vel(const VectorXd& xd, int i) const { return inside(i) ? xd(wrap(i)) : 0.0; }
};

} // namespace detail

inline std::string to_string(TodaBoundary b) {
    return b == TodaBoundary::periodic ? "periodic" : "open_end";
}

/// Toda lattice L = sum(xdot_i^2/2 - e^{x_{i+1}-x_i}) with the symmetries
/// v1 (flux 2/3 sum xdot^3) and v2.
inline LagrangianSystem make_toda(int n, TodaBoundary boundary) {
    if (n < 3) throw ParameterError("toda: n must be at least 3");
    const detail::TodaIndexing ix{n, boundary == TodaBoundary::periodic};

    LagrangianSystem sys;
    sys.name = "toda";
    sys.n = n;
    sys.lagrangian = JetScalarFn([ix](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        S sum(0.0);
        for (int i = 0; i < ix.n; ++i) sum += 0.5 * xd[i] * xd[i] - ix.expdiff<S>(x, i, i + 1);
        return sum;
    });

    SymmetrySpec v1;
    v1.name = "toda_1";
    v1.characteristic = JetVectorFn([ix](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        std::vector<S> v(static_cast<std::size_t>(ix.n));
        for (int i = 0; i < ix.n; ++i)
            v[i] = xd[i] * xd[i] + ix.expdiff<S>(x, i, i + 1) + ix.expdiff<S>(x, i - 1, i);
        return v;
    });
    v1.flux = JetScalarFn([ix](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        S sum(0.0);
        for (int i = 0; i < ix.n; ++i) sum += xd[i] * xd[i] * xd[i];
        return (2.0 / 3.0) * sum;
    });

    SymmetrySpec v2;
    v2.name = "toda_2";
    v2.characteristic = JetVectorFn([ix](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        std::vector<S> v(static_cast<std::size_t>(ix.n));
        for (int i = 0; i < ix.n; ++i) {
            const S vi = xd[i];
            v[i] = vi * vi * vi +
                   (ix.vel<S>(xd, i + 1) + 2.0 * vi) * ix.expdiff<S>(x, i, i + 1) +
                   (2.0 * vi + ix.vel<S>(xd, i - 1)) * ix.expdiff<S>(x, i - 1, i);
        }
        return v;
    });
    // The e^{x_{i+2}-x_i} term enters with a minus sign; this is the flux for
    // which D_{v2}L = D_t F_2 and sum p V^(2) - F_2 = J_2.
    v2.flux = JetScalarFn([ix](auto x, auto xd) {
        using S = detail::scalar_of<decltype(x)>;
        S sum(0.0);
        for (int i = 0; i < ix.n; ++i) {
            const S a = xd[i];
            const S b = ix.vel<S>(xd, i + 1);
            const S e1 = ix.expdiff<S>(x, i, i + 1);
            sum += 0.75 * a * a * a * a + (a * a + a * b + b * b) * e1;
            sum -= 0.5 * e1 * e1 + ix.expdiff<S>(x, i, i + 2);
        }
        return sum;
    });
    sys.symmetries = {std::move(v1), std::move(v2)};
    sys.sample_box = SampleBox::uniform(n, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0});

    sys.reference_integral = [ix](int k, const TangentPoint& pt) {
        const VectorXd& x = pt.x;
        const VectorXd& v = pt.xdot;
        double sum = 0.0;
        for (int i = 0; i < ix.n; ++i) {
            const double a = v(i);
            const double b = ix.vel(v, i + 1);
            const double e1 = ix.expdiff(x, i, i + 1);
            if (k == 1) {
                sum += a * a * a / 3.0 + (a + b) * e1;
            } else if (k == 2) {
                sum += 0.25 * a * a * a * a + (a * a + a * b + b * b) * e1;
                sum += 0.5 * e1 * e1 + ix.expdiff(x, i, i + 2);
            } else {
                throw IndexError("toda reference integral index");
            }
        }
        return sum;
    };

    sys.reference_rij = [ix](int k, int l, const TangentPoint& pt) {
        MatrixXd r = MatrixXd::Zero(ix.n, ix.n);
        if (k == l) return r;
        const VectorXd& x = pt.x;
        const VectorXd& v = pt.xdot;
        for (int i = 0; i < ix.n; ++i) {
            if (ix.inside(i + 1))
                r(i, ix.wrap(i + 1)) += -2.0 * (ix.vel(v, i + 1) - v(i)) * ix.expdiff(x, i, i + 1);
            if (ix.inside(i - 1))
                r(i, ix.wrap(i - 1)) += 2.0 * (v(i) - ix.vel(v, i - 1)) * ix.expdiff(x, i - 1, i);
        }
        if (k == 1 && l == 2) return r;
        if (k == 2 && l == 1) return MatrixXd(-r);
        throw IndexError("toda reference r_ij is known for the pair (1, 2)");
    };

    sys.reference_multitime_el = [ix](int k, const ExtendedJet& e) {
        const VectorXd& x = e.x;
        const VectorXd& v = e.xdot;
        VectorXd out(ix.n);
        for (int i = 0; i < ix.n; ++i) {
            const double a = v(i);
            const double next = ix.vel(v, i + 1);
            const double prev = ix.vel(v, i - 1);
            const double ef = ix.expdiff(x, i, i + 1);
            const double eb = ix.expdiff(x, i - 1, i);
            if (k == 1) {
                out(i) = (a + next) * ef - (a + prev) * eb - e.xdott.at(0)(i);
            } else if (k == 2) {
                out(i) = (a * a + a * next + next * next) * ef -
                         (prev * prev + prev * a + a * a) * eb + ef * ef - eb * eb +
                         ix.expdiff(x, i, i + 2) - ix.expdiff(x, i - 2, i) - e.xdott.at(1)(i);
            } else {
                throw IndexError("toda reference multi-time EL index");
            }
        }
        return out;
    };
    return sys;
}

// ---------------------------------------------------------------------------
// Harmonic oscillator

/// L = xdot^2/2 - omega^2 x^2/2 with its energy symmetry (V = xdot, F = L).
inline LagrangianSystem make_harmonic(double omega) {
    if (!std::isfinite(omega)) throw ParameterError("harmonic: omega must be finite");
    LagrangianSystem sys;
    sys.name = "harmonic";
    sys.n = 1;
    sys.lagrangian = JetScalarFn([omega](auto x, auto xd) {
        return 0.5 * xd[0] * xd[0] - 0.5 * omega * omega * x[0] * x[0];
    });
    SymmetrySpec energy;
    energy.name = "energy";
    energy.characteristic = JetVectorFn([](auto, auto xd) {
        using S = detail::scalar_of<decltype(xd)>;
        return std::vector<S>{xd[0]};
    });
    energy.flux = sys.lagrangian;
    sys.symmetries.push_back(std::move(energy));
    sys.sample_box = SampleBox::uniform(1, {-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0});
    sys.reference_integral = [omega](int k, const TangentPoint& pt) {
        if (k != 1) throw IndexError("harmonic reference integral index");
        return 0.5 * pt.xdot(0) * pt.xdot(0) + 0.5 * omega * omega * pt.x(0) * pt.x(0);
    };
    return sys;
}

} // namespace pluriform
