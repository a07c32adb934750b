#pragma once

/**
 * @file direct.hpp
 * @brief Direct flatness residuals of F-bar from the derivative oracle, and the projective factor.
 *
 *   projective:  F-bar_{x^k y^l} y^k - F-bar_{x^l}
 *   dual:        L_{x^k y^l} y^k - 2 L_{x^l},  L = F-bar^2
 */

#include <vector>

#include "frl/base/bundle.hpp"
#include "frl/base/fields.hpp"
#include "frl/flatness/conditions.hpp"
#include "frl/randers/closed_forms.hpp"
#include "frl/randers/scalar_fields.hpp"
#include "frl/tensor/derivatives.hpp"

namespace frl {

namespace detail {

inline void require_family_domain(const Family& fam, const MetricField& a, const OneFormField& b,
                                  const std::vector<double>& x, const std::vector<double>& y) {
    require_domain(fam, base_bundle(a, b, x, y));
}

}  // namespace detail

inline Covector flatness_direct(FlatnessKind kind, const Family& fam, const MetricField& a, const OneFormField& b,
                                const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_family_domain(fam, a, b, x, y);
    const int power = kind == FlatnessKind::projective ? 1 : 2;
    const double k = kind == FlatnessKind::projective ? 1.0 : 2.0;
    const auto p = flatness_pair(fbar_field(fam, a, b, power), x, y, x_mode(a, b));
    Covector r(p.fx.size());
    for (std::size_t l = 0; l < r.size(); ++l) r[l] = p.fxy_y[l] - k * p.fx[l];
    return r;
}

inline Covector projective_direct(const Family& fam, const MetricField& a, const OneFormField& b,
                                  const std::vector<double>& x, const std::vector<double>& y) {
    return flatness_direct(FlatnessKind::projective, fam, a, b, x, y);
}

inline Covector dual_direct(const Family& fam, const MetricField& a, const OneFormField& b,
                            const std::vector<double>& x, const std::vector<double>& y) {
    return flatness_direct(FlatnessKind::dual, fam, a, b, x, y);
}

/** @brief P = F-bar_{x^k} y^k / (2 F-bar). */
inline double projective_factor(const MetricField& a, const OneFormField& b, const Family& fam,
                                const std::vector<double>& x, const std::vector<double>& y) {
    const BaseBundle B = base_bundle(a, b, x, y);
    const double Fb = fbar(fam, B.F, B.beta);
    const auto p = flatness_pair(fbar_field(fam, a, b), x, y, x_mode(a, b));
    return dot(p.fx, y) / (2.0 * Fb);
}

}  // namespace frl
