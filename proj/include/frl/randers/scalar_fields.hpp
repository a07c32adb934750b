#pragma once

/**
 * @file scalar_fields.hpp
 * @brief F-bar and L = F-bar^2 as ScalarFields over (x, y), for the derivative oracles.
 */

#include <span>
#include <type_traits>

#include "frl/base/fields.hpp"
#include "frl/randers/family.hpp"
#include "frl/tensor/jet.hpp"

namespace frl {

namespace detail {
template <class Span>
using span_scalar = std::remove_cv_t<typename Span::element_type>;
}

/// F-bar(x, y) built from the fields; power = 2 gives L = F-bar^2.
inline auto fbar_field(const Family& fam, const MetricField& a, const OneFormField& b, int power = 1) {
    return [fam, a, b, power](auto x, auto y) {
        using T = detail::span_scalar<decltype(x)>;
        using std::sqrt;
        const T A = a.quadratic<T>(x, y);
        const T beta = b.linear<T>(x, y);
        T v = fbar_expr<T>(fam, sqrt(A), beta);
        return power == 2 ? T(v * v) : v;
    };
}

/// F-bar(y) for constant a and b (x is ignored).
inline auto fbar_field(const Family& fam, const SymMatrix& a, const Covector& b) {
    return fbar_field(fam, MetricField::constant(a), OneFormField::constant(b));
}

/// sqrt(a_ij(x) y^i y^j)
inline auto alpha_field(const MetricField& a) {
    return [a](auto x, auto y) {
        using T = detail::span_scalar<decltype(x)>;
        using std::sqrt;
        return T(sqrt(a.quadratic<T>(x, y)));
    };
}

/// A = a_ij(x) y^i y^j
inline auto quadratic_field(const MetricField& a) {
    return [a](auto x, auto y) {
        using T = detail::span_scalar<decltype(x)>;
        return a.quadratic<T>(x, y);
    };
}

/// beta = b_i(x) y^i
inline auto beta_field(const OneFormField& b) {
    return [b](auto x, auto y) {
        using T = detail::span_scalar<decltype(x)>;
        return b.linear<T>(x, y);
    };
}

}  // namespace frl
