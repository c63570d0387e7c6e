#pragma once

#include "pluriform/mechsys/lagrangian.hpp"
#include "pluriform/mechsys/types.hpp"

#include <cstdint>
#include <random>

namespace pluriform {

/// Deterministic jet sampler over a system's sample_box.
///
/// Every slot of a jet is drawn independently; multi-time partials x_{t_k}
/// use the velocity box and (xdot)_{t_k} the acceleration box.
class Sampler {
public:
    Sampler(const LagrangianSystem& sys, std::uint64_t seed) : sys_(sys), rng_(seed) {}

    TangentPoint tangent() {
        for (;;) {
            TangentPoint pt{draw(sys_.sample_box.x), draw(sys_.sample_box.xdot)};
            if (pt.x.norm() >= sys_.sample_box.min_x_norm) return pt;
        }
    }

    Jet2Point jet2() {
        const TangentPoint pt = tangent();
        return {pt.x, pt.xdot, draw(sys_.sample_box.xddot)};
    }

    /// Fully generic (off-shell) extended jet.
    ExtendedJet extended() {
        const Jet2Point j = jet2();
        ExtendedJet e{j.x, j.xdot, j.xddot, {}, {}};
        for (int k = 0; k < sys_.symmetry_count(); ++k) {
            e.xt.push_back(draw(sys_.sample_box.xdot));
            e.xdott.push_back(draw(sys_.sample_box.xddot));
        }
        return e;
    }

    /// Phase point obtained as the Legendre image of a sampled tangent point.
    PhasePoint phase() {
        const TangentPoint pt = tangent();
        return {pt.x, momentum(sys_, pt)};
    }

private:
    VectorXd draw(const std::vector<Interval>& box) {
        VectorXd v(static_cast<Eigen::Index>(box.size()));
        for (std::size_t i = 0; i < box.size(); ++i) {
            std::uniform_real_distribution<double> d(box[i].lo, box[i].hi);
            v(static_cast<Eigen::Index>(i)) = d(rng_);
        }
        return v;
    }

    const LagrangianSystem& sys_;
    std::mt19937_64 rng_;
};

} // namespace pluriform
