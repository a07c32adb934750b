#pragma once

/**
 * @file inverse_metric.hpp
 * @brief Inverse fundamental tensor of a Randers-changed metric by three rank-one updates.
 *
 *   gbar_ij = rho0 { g_ij + lambda c_i c_j + mu d_i d_j + nu b_i b_j },  c_i = b_i + y_i/F,  d_i = y_i/F
 *   m^ij    = g^ij - (lambda/X) c^i c^j
 *   n^ij    = m^ij - (mu/Y) d^i d^j,  d^i = m^ij d_j
 *   gbar^ij = (n^ij - nu/(1 + nu btilde^2) nt^i nt^j) / rho0,  nt^i = n^ij b_j
 *
 * Indices are raised with the base inverse g^ij = a^ij.
 */

#include <cmath>
#include <string>

#include "frl/base/bundle.hpp"
#include "frl/errors.hpp"
#include "frl/randers/closed_forms.hpp"
#include "frl/randers/family.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

inline constexpr double kSingularThreshold = 1e-12;

/** @brief Scalars of the cascade; d2, Y, btilde2 are NaN when X vanishes, btilde2 also when Y does. */
struct MixingParams {
    double rho0 = 0.0;
    double lambda = 0.0, mu = 0.0, nu = 0.0;
    double c2 = 0.0;  ///< b^2 + 2 beta/F + 1
    double X = 1.0;   ///< 1 + lambda c^2
    double d2 = 1.0;  ///< 1 - (lambda/X)(1 + beta/F)^2
    double Y = 1.0;   ///< 1 + mu d^2
    double btilde2 = 0.0;

    /// 1 + nu btilde^2
    double final_scalar() const { return 1.0 + nu * btilde2; }
};

namespace detail {

inline void require_nonsingular(const char* which, double v) {
    if (!(std::fabs(v) >= kSingularThreshold))
        throw SingularError(which, std::string("singular inverse cascade: ") + which + " = " + std::to_string(v));
}

inline SymMatrix outer_combo(const BaseBundle& B, double gg, double yb, double yy, double bb) {
    // gg g^ij + yb (y^i b^j + y^j b^i) + yy y^i y^j + bb b^i b^j
    SymMatrix r(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j)
            r.set(i, j,
                  gg * B.ginv(i, j) + yb * (B.y[i] * B.bup[j] + B.y[j] * B.bup[i]) + yy * B.y[i] * B.y[j] +
                      bb * B.bup[i] * B.bup[j]);
    return r;
}

}  // namespace detail

/** @brief lambda, mu, nu, c^2, X, d^2, Y and btilde^2 from rho and the base bundle. */
inline MixingParams mixing_params(const Rho& rho, const BaseBundle& B) {
    detail::require_nonsingular("rho0", rho.r0);
    MixingParams P;
    P.rho0 = rho.r0;
    P.lambda = rho.r1 / rho.r0;
    P.mu = (rho.r2 - rho.r1) / rho.r0;
    P.nu = (rho.r3 - rho.r1) / rho.r0;
    const double t = B.beta / B.F;
    P.c2 = B.b2 + 2.0 * t + 1.0;
    P.X = 1.0 + P.lambda * P.c2;
    if (!(std::fabs(P.X) >= kSingularThreshold)) {
        P.d2 = P.Y = P.btilde2 = NAN;
        return P;
    }
    const double lx = P.lambda / P.X, u = 1.0 + t;
    P.d2 = 1.0 - lx * u * u;
    P.Y = 1.0 + P.mu * P.d2;
    if (!(std::fabs(P.Y) >= kSingularThreshold)) {
        P.btilde2 = NAN;
        return P;
    }
    const double my = P.mu / P.Y;
    const double b2 = B.b2;
    const double diag = 1.0 - lx * u;
    const double mixed = -lx * u + lx * lx * u * u;
    const double bt = b2 + t;
    P.btilde2 = b2 - lx * bt * bt - my * t * t * diag * diag - 2.0 * b2 * t * my * mixed -
                b2 * b2 * my * lx * lx * u * u;
    return P;
}

/** @brief d^i = m^ij y_j / F = ((1 - k)/F) y^i - k b^i with k = (lambda/X)(1 + beta/F). */
inline Covector cascade_d(const MixingParams& P, const BaseBundle& B) {
    detail::require_nonsingular("X", P.X);
    const double k = P.lambda / P.X * (1.0 + B.beta / B.F);
    Covector d(B.n);
    for (int i = 0; i < B.n; ++i) d[i] = (1.0 - k) / B.F * B.y[i] - k * B.bup[i];
    return d;
}

/** @brief B^ij expanded term by term in the (y y, y b + b y, b b) basis. */
inline SymMatrix bij_expansion(const MixingParams& P, const BaseBundle& B) {
    detail::require_nonsingular("X", P.X);
    const double lx = P.lambda / P.X, u = 1.0 + B.beta / B.F, F = B.F;
    const double diag = 1.0 - lx * u;
    return detail::outer_combo(B, 0.0, (-lx * u + lx * lx * u * u) / F, diag * diag / (F * F), lx * lx * u * u);
}

/** @brief max |expansion - d^i d^j|. */
inline double bij_discrepancy(const MixingParams& P, const BaseBundle& B) {
    const SymMatrix e = bij_expansion(P, B);
    const Covector d = cascade_d(P, B);
    double m = 0.0;
    for (int i = 0; i < B.n; ++i)
        for (int j = 0; j < B.n; ++j) m = std::max(m, std::fabs(e(i, j) - d[i] * d[j]));
    return m;
}

/** @brief n^ij = g^ij - (lambda/X) c^i c^j - (mu/Y) d^i d^j, with B^ij = d^i d^j authoritative. */
inline SymMatrix cascade_n_inverse(const MixingParams& P, const BaseBundle& B) {
    detail::require_nonsingular("X", P.X);
    detail::require_nonsingular("Y", P.Y);
    const Covector d = cascade_d(P, B);
#ifndef NDEBUG
    const double scale = 1.0 + max_abs(d) * max_abs(d);
    if (bij_discrepancy(P, B) > 1e-9 * scale) throw NumericError("B^ij expansion disagrees with d^i d^j");
#endif
    Covector c(B.n);
    for (int i = 0; i < B.n; ++i) c[i] = B.bup[i] + B.y[i] / B.F;
    const double lx = P.lambda / P.X, my = P.mu / P.Y;
    SymMatrix N(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j) N.set(i, j, B.ginv(i, j) - lx * c[i] * c[j] - my * d[i] * d[j]);
    return N;
}

/** @brief gbar^ij from precomputed mixing parameters. */
inline SymMatrix inverse_from_params(const MixingParams& P, const BaseBundle& B) {
    detail::require_nonsingular("rho0", P.rho0);
    const SymMatrix N = cascade_n_inverse(P, B);
    detail::require_nonsingular("1+nu*btilde2", P.final_scalar());
    const Covector nt = N.apply(B.b);
    const double w = P.nu / P.final_scalar();
    SymMatrix G(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j) G.set(i, j, (N(i, j) - w * nt[i] * nt[j]) / P.rho0);
    return G;
}

/** @brief Inverse fundamental tensor gbar^ij of the changed metric. */
inline SymMatrix inverse_metric(const Family& fam, const BaseBundle& B) {
    return inverse_from_params(mixing_params(rho_coefficients(fam, B.F, B.beta), B), B);
}

/**
 * @brief The inverse with the last update along b^i b^j instead of n^ij b_j n^jk b_k.
 *
 * This is the grouped expression in which the final rank-one factor uses the raised
 * base 1-form. It is not an inverse of gbar in general; the test-suite pins that.
 */
inline SymMatrix inverse_metric_printed(const Family& fam, const BaseBundle& B) {
    const MixingParams P = mixing_params(rho_coefficients(fam, B.F, B.beta), B);
    detail::require_nonsingular("X", P.X);
    detail::require_nonsingular("Y", P.Y);
    detail::require_nonsingular("1+nu*btilde2", P.final_scalar());
    const double lx = P.lambda / P.X, my = P.mu / P.Y, u = 1.0 + B.beta / B.F, F = B.F;
    const double yb = (-lx - my * (-lx * u + lx * lx * u * u)) / F;
    const double yy = (-lx - my * (1.0 - lx * u) * (1.0 - lx * u)) / (F * F);
    const double bb = -lx - my * lx * lx * u * u - P.nu / P.final_scalar();
    SymMatrix G = detail::outer_combo(B, 1.0, yb, yy, bb);
    SymMatrix R(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j) R.set(i, j, G(i, j) / P.rho0);
    return R;
}

/** @brief det(gbar) against rho0^n (1 + nu btilde^2) Y X det(g). */
struct DeterminantRelation {
    double det_gbar = 0.0;
    double predicted = 0.0;
    double rel_error = 0.0;
};

inline DeterminantRelation determinant_relation(const Family& fam, const BaseBundle& B) {
    const MixingParams P = mixing_params(rho_coefficients(fam, B.F, B.beta), B);
    DeterminantRelation r;
    r.det_gbar = determinant(gbar(fam, B));
    r.predicted = std::pow(P.rho0, B.n) * P.final_scalar() * P.Y * P.X * determinant(B.g);
    r.rel_error = std::fabs(r.det_gbar - r.predicted) / std::max(std::fabs(r.det_gbar), 1e-300);
    return r;
}

}  // namespace frl
