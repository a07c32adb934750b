#pragma once

/**
 * @file minkowski.hpp
 * @brief Grid check of the three inequalities that make alpha * phi(beta / alpha) a Minkowski norm:
 *        phi > 0,  phi - s phi' + (b^2 - s^2) phi'' > 0,  phi - s phi' > 0.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "frl/errors.hpp"

namespace frl {

struct PhiSpec {
    std::string name;
    std::function<double(double)> phi, dphi, ddphi;
    double b0 = std::numeric_limits<double>::infinity();  ///< admissibility interval (-b0, b0)
};

inline PhiSpec randers_phi() {
    return {"randers", [](double s) { return 1.0 + s; }, [](double) { return 1.0; }, [](double) { return 0.0; }, 1.0};
}

inline PhiSpec exponential_phi() {
    auto e = [](double s) { return std::exp(s); };
    return {"exponential", e, e, e, std::numeric_limits<double>::infinity()};
}

struct MinkowskiPoint {
    double s;
    double c1, c2, c3;  ///< phi, phi - s phi' + (b^2 - s^2) phi'', phi - s phi'
    bool ok1, ok2, ok3;
};

struct MinkowskiReport {
    double b = 0.0;
    std::vector<MinkowskiPoint> points;
    double min1 = INFINITY, min2 = INFINITY, min3 = INFINITY;
    bool all_ok() const {
        for (const auto& p : points)
            if (!(p.ok1 && p.ok2 && p.ok3)) return false;
        return true;
    }
};

/// Non-finite values count as violations.
inline MinkowskiReport minkowski_check(const PhiSpec& phi, double b, const std::vector<double>& s_grid) {
    if (!(b >= 0.0) || !(b < phi.b0))
        throw InputError("minkowski-check needs 0 <= b < b0 (b = " + std::to_string(b) + ", b0 = " +
                         std::to_string(phi.b0) + ")");
    MinkowskiReport r;
    r.b = b;
    for (double s : s_grid) {
        if (!(std::fabs(s) <= b)) throw InputError("grid point s = " + std::to_string(s) + " outside |s| <= b");
        MinkowskiPoint p{};
        p.s = s;
        const double f = phi.phi(s), d = phi.dphi(s), dd = phi.ddphi(s);
        p.c1 = f;
        p.c2 = f - s * d + (b * b - s * s) * dd;
        p.c3 = f - s * d;
        p.ok1 = std::isfinite(p.c1) && p.c1 > 0.0;
        p.ok2 = std::isfinite(p.c2) && p.c2 > 0.0;
        p.ok3 = std::isfinite(p.c3) && p.c3 > 0.0;
        auto upd = [](double& m, double v) { m = std::isfinite(v) ? std::min(m, v) : -INFINITY; };
        upd(r.min1, p.c1);
        upd(r.min2, p.c2);
        upd(r.min3, p.c3);
        r.points.push_back(p);
    }
    return r;
}

/// count points evenly spaced over [-b, b].
inline std::vector<double> uniform_grid(double b, int count) {
    if (count < 1) throw InputError("grid needs at least one point");
    std::vector<double> s;
    if (count == 1) return {0.0};
    for (int i = 0; i < count; ++i) s.push_back(-b + 2.0 * b * i / (count - 1));
    return s;
}

}  // namespace frl
