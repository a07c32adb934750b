#pragma once

/**
 * @file covector_ops.hpp
 * @brief Elementwise covector arithmetic so residual formulas read like their math.
 *
 * Opt-in via `using namespace frl::cvops;`.
 */

#include <cstddef>
#include <vector>

#include "frl/errors.hpp"

namespace frl::cvops {

using V = std::vector<double>;

inline void same_size(const V& a, const V& b) {
    if (a.size() != b.size()) throw InputError("covector size mismatch");
}

inline V operator+(const V& a, const V& b) {
    same_size(a, b);
    V r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline V operator-(const V& a, const V& b) {
    same_size(a, b);
    V r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline V operator-(const V& a) {
    V r(a);
    for (double& v : r) v = -v;
    return r;
}

inline V operator*(double s, const V& a) {
    V r(a);
    for (double& v : r) v *= s;
    return r;
}

inline V operator*(const V& a, double s) { return s * a; }

inline V operator/(const V& a, double s) { return (1.0 / s) * a; }

}  // namespace frl::cvops
