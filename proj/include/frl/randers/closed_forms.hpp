#pragma once

/**
 * @file closed_forms.hpp
 * @brief Closed-form y-gradient, fundamental tensor, Cartan tensor and rho-coefficients
 *        of the six changed metrics, written against a general BaseBundle.
 *
 * Every fundamental tensor has the shape
 *     gbar_ij = c_g g_ij + c_bl (b_i l_j + b_j l_i) + c_ll l_i l_j + c_bb b_i b_j
 * and every Cartan tensor
 *     Cbar_ijk = c_C C_ijk + c_hm (h_ij m_k + h_jk m_i + h_ki m_j) + c_mmm m_i m_j m_k.
 * The coefficient functions below keep the grouping of the derivation; rho_coefficients
 * is an independent, simplified evaluation in s = beta/F used by the inverse cascade.
 */

#include <cmath>

#include "frl/base/bundle.hpp"
#include "frl/randers/family.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

struct MetricCoefficients {
    double g, bl, ll, bb;
};

struct CartanCoefficients {
    double C, hm, mmm;
};

struct Rho {
    double r0, r1, r2, r3;
};

namespace detail {

inline void require_domain(const Family& fam, const BaseBundle& B) {
    const auto st = domain_check(fam, B.F, B.beta);
    if (!st) throw DomainError(fam.name() + ": " + st.violation);
}

inline double ipow(double v, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= v;
    return r;
}

}  // namespace detail

/** @brief (coefficient of F_{y^i}, coefficient of b_i) in F-bar_{y^i}. */
inline std::pair<double, double> fbar_gradient_coefficients(const Family& fam, double F, double beta) {
    switch (fam.kind()) {
        case FamilyKind::Kropina: return {2.0 * F / beta, -(F * F - beta * beta) / (beta * beta)};
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            return {(m + 1.0) * std::pow(F, m) / std::pow(beta, m), 1.0 - m * std::pow(F, m + 1.0) / std::pow(beta, m + 1.0)};
        }
        case FamilyKind::Square: return {1.0 - beta * beta / (F * F), 2.0 * beta / F + 3.0};
        case FamilyKind::Matsumoto: {
            const double d = (F - beta) * (F - beta);
            return {(F * F - 2.0 * beta * F) / d, F * F / d + 1.0};
        }
        case FamilyKind::Exponential: {
            const double e = std::exp(beta / F);
            return {(1.0 - beta / F) * e, 1.0 + e};
        }
        case FamilyKind::InfiniteSeries: {
            const double d = (beta - F) * (beta - F);
            return {beta * beta / d, (beta * beta - 2.0 * beta * F) / d + 1.0};
        }
    }
    return {0.0, 0.0};
}

/** @brief F-bar_{y^i}. */
inline Covector fbar_y_gradient(const Family& fam, const BaseBundle& B) {
    detail::require_domain(fam, B);
    const auto [cl, cb] = fbar_gradient_coefficients(fam, B.F, B.beta);
    Covector g(B.n);
    for (int i = 0; i < B.n; ++i) g[i] = cl * B.ell[i] + cb * B.b[i];
    return g;
}

/** @brief Coefficients of the fundamental tensor in the derivation's grouping. */
inline MetricCoefficients gbar_coefficients(const Family& fam, double F, double beta) {
    const double F2 = F * F, F3 = F2 * F, F4 = F3 * F;
    const double b = beta, b2 = b * b, b3 = b2 * b, b4 = b3 * b;
    switch (fam.kind()) {
        case FamilyKind::Kropina:
            return {2.0 * (F2 + b2) / b2, -4.0 * F3 / b3, 4.0 * F2 / b2, 3.0 * F4 / b4 + 1.0};
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            auto q = [&](double p) { return std::pow(F, p) / std::pow(b, p); };
            return {(m + 1.0) * (q(2 * m) + q(m - 1)), -(m + 1.0) * (2 * m * q(2 * m + 1) + (m - 1) * q(m)),
                    (m + 1.0) * (2 * m * q(2 * m) + (m - 1) * q(m - 1)),
                    1.0 + m * (2 * m + 1) * q(2 * m + 2) + m * (m - 1) * q(m + 1)};
        }
        case FamilyKind::Square:
            return {1.0 + 3.0 * b / F - 3.0 * b3 / F3 - b4 / F4, 3.0 - 4.0 * b3 / F3 - 9.0 * b2 / F2,
                    -3.0 * b / F + 9.0 * b3 / F3 + 4.0 * b4 / F4, 11.0 + 18.0 * b / F + 6.0 * b2 / F2};
        case FamilyKind::Matsumoto: {
            // The l_i l_j slot carries F_{y^i} F_{y^j}.
            const double d = detail::ipow(F - b, 4);
            return {(F4 - 2 * b * F3 - 2 * b2 * F2 + 5 * b3 * F - 2 * b4) / d, (2 * F4 - 8 * b * F3 + 3 * b2 * F2) / d,
                    (-2 * b * F3 + 8 * b2 * F2 - 3 * b3 * F) / d,
                    (6 * F4 - 6 * b * F3 + 6 * b2 * F2 - 4 * b3 * F + b4) / d};
        }
        case FamilyKind::Exponential: {
            const double s = b / F, e = std::exp(s);
            const double K = -1.0 + s + s * s + (-1.0 + 2.0 * s) * e;
            return {(e + s) * e * (1.0 - s), -e * K, s * e * K, 1.0 + 2.0 * std::exp(2.0 * s) + (2.0 + s) * e};
        }
        case FamilyKind::InfiniteSeries: {
            const double d = detail::ipow(b - F, 4);
            return {b3 * (2 * b - F) * (b - F) / F / d, (2 * b4 - 8 * b3 * F + 3 * b2 * F2) / d,
                    (-2 * b4 * b / F + 8 * b4 - 3 * b3 * F) / d,
                    (4 * b4 - 16 * b3 * F + 24 * b2 * F2 - 10 * b * F3 + F4) / d};
        }
    }
    return {0, 0, 0, 0};
}

inline SymMatrix assemble_metric(const MetricCoefficients& c, const BaseBundle& B) {
    SymMatrix g(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j)
            g.set(i, j,
                  c.g * B.g(i, j) + c.bl * (B.b[i] * B.ell[j] + B.b[j] * B.ell[i]) + c.ll * B.ell[i] * B.ell[j] +
                      c.bb * B.b[i] * B.b[j]);
    return g;
}

/** @brief Closed-form fundamental tensor gbar_ij. */
inline SymMatrix gbar(const Family& fam, const BaseBundle& B) {
    detail::require_domain(fam, B);
    return assemble_metric(gbar_coefficients(fam, B.F, B.beta), B);
}

/**
 * @brief Matsumoto fundamental tensor with the third term read literally as F_{y^i y^j}.
 *
 * Kept so the test-suite can show this reading disagrees with the Hessian oracle.
 * On a Riemannian base F_{y^i y^j} = h_ij / F.
 */
inline SymMatrix matsumoto_gbar_literal(const BaseBundle& B) {
    const Family fam(FamilyKind::Matsumoto);
    detail::require_domain(fam, B);
    const auto c = gbar_coefficients(fam, B.F, B.beta);
    SymMatrix g = assemble_metric({c.g, c.bl, 0.0, c.bb}, B);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j) g.set(i, j, g(i, j) + c.ll * B.h(i, j) / B.F);
    return g;
}

inline CartanCoefficients cartan_coefficients(const Family& fam, double F, double beta) {
    const double F2 = F * F, F3 = F2 * F, F4 = F3 * F;
    const double b = beta, b2 = b * b, b3 = b2 * b, b4 = b3 * b;
    switch (fam.kind()) {
        case FamilyKind::Kropina:
            return {2.0 * (F2 + b2) / b2, -2.0 * F2 / b3, -6.0 * F4 / (b4 * b)};
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            auto q = [&](double p) { return std::pow(F, p) / std::pow(b, p); };
            const double cC = (m + 1.0) * (q(2 * m) + q(m - 1));
            const double chm = -(m + 1.0) / 2.0 * std::pow(F, m - 1) / std::pow(b, m) * (2 * m * q(m + 1) + (m - 1));
            const double cm = -m / 2.0 * std::pow(F, m + 1) / std::pow(b, m + 2) *
                              ((2 * m + 1) * (2 * m + 2) * q(m + 1) + (m * m - 1));
            return {cC, chm, cm};
        }
        case FamilyKind::Square:
            return {1.0 + 3.0 * b / F - 3.0 * b3 / F3 - b4 / F4, 0.5 * (3.0 / F - 9.0 * b2 / F3 - 4.0 * b3 / F4),
                    9.0 / F + 6.0 * b / F2};
        case FamilyKind::Matsumoto: {
            const double d = detail::ipow(F - b, 4);
            return {(F4 - 2 * b * F3 - 2 * b2 * F2 + 5 * b3 * F - 2 * b4) / d, (2 * F3 - 8 * b * F2 + 3 * b2 * F) / (2 * d),
                    (9 * F4 - 3 * b * F3) / (d * (F - b))};
        }
        case FamilyKind::Exponential: {
            const double s = b / F, e = std::exp(s);
            return {(e + s) * e * (1.0 - s), e / (2.0 * F) * (1.0 - s - s * s + (1.0 - 2.0 * s) * e),
                    e / (2.0 * F) * (3.0 + s + 4.0 * e)};
        }
        case FamilyKind::InfiniteSeries: {
            const double d = detail::ipow(b - F, 4);
            return {b3 * (2 * b - F) / (F * detail::ipow(b - F, 3)), (2 * b4 - 8 * b3 * F + 3 * b2 * F2) / (2 * F * d),
                    3 * F3 * (F - 3 * b) / (d * (b - F))};
        }
    }
    return {0, 0, 0};
}

/** @brief Closed-form Cartan tensor Cbar_ijk. */
inline Sym3Tensor cartan_bar(const Family& fam, const BaseBundle& B) {
    detail::require_domain(fam, B);
    const auto c = cartan_coefficients(fam, B.F, B.beta);
    const auto& h = B.h;
    const auto& m = B.m;
    Sym3Tensor T(B.n);
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j)
            for (int k = j; k < B.n; ++k)
                T.set(i, j, k,
                      c.C * B.C(i, j, k) + c.hm * (h(i, j) * m[k] + h(j, k) * m[i] + h(k, i) * m[j]) +
                          c.mmm * m[i] * m[j] * m[k]);
    return T;
}

/**
 * @brief (rho0, rho1, rho2, rho3) with
 *        gbar = rho0 g + rho1 (b_i y_j + b_j y_i)/F + rho2 y_i y_j / F^2 + rho3 b_i b_j.
 */
inline Rho rho_coefficients(const Family& fam, double F, double beta) {
    const auto st = domain_check(fam, F, beta);
    if (!st) throw DomainError(fam.name() + ": " + st.violation);
    const double s = beta / F;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s;
    switch (fam.kind()) {
        case FamilyKind::Kropina: {
            const double F2 = F * F, b2 = beta * beta;
            return {2.0 * (F2 + b2) / b2, -4.0 * F2 * F / (b2 * beta), 4.0 * F2 / b2, 3.0 * F2 * F2 / (b2 * b2) + 1.0};
        }
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m(), r = F / beta;
            auto p = [&](double e) { return std::pow(r, e); };
            return {(m + 1) * (p(2 * m) + p(m - 1)), -(m + 1) * (2 * m * p(2 * m + 1) + (m - 1) * p(m)),
                    (m + 1) * (2 * m * p(2 * m) + (m - 1) * p(m - 1)), 1 + m * (2 * m + 1) * p(2 * m + 2) + m * (m - 1) * p(m + 1)};
        }
        case FamilyKind::Square:
            return {1 + 3 * s - 3 * s3 - s4, 3 - 4 * s3 - 9 * s2, -3 * s + 9 * s3 + 4 * s4, 11 + 18 * s + 6 * s2};
        case FamilyKind::Matsumoto: {
            const double t4 = detail::ipow(1.0 - s, 4);
            return {(1 - 2 * s - 2 * s2 + 5 * s3 - 2 * s4) / t4, (2 - 8 * s + 3 * s2) / t4, (-2 * s + 8 * s2 - 3 * s3) / t4,
                    (6 - 6 * s + 6 * s2 - 4 * s3 + s4) / t4};
        }
        case FamilyKind::Exponential: {
            const double e = std::exp(s);
            const double K = -1 + s + s2 + (-1 + 2 * s) * e;
            return {(e + s) * e * (1 - s), -e * K, s * e * K, 1 + 2 * e * e + (2 + s) * e};
        }
        case FamilyKind::InfiniteSeries: {
            const double d = detail::ipow(s - 1.0, 4);
            return {s3 * (2 * s - 1) * (s - 1) / d, (2 * s4 - 8 * s3 + 3 * s2) / d, (-2 * s4 * s + 8 * s4 - 3 * s3) / d,
                    (4 * s4 - 16 * s3 + 24 * s2 - 10 * s + 1) / d};
        }
    }
    return {0, 0, 0, 0};
}

/// rho0 g + rho1 (b_i y_j + b_j y_i)/F + rho2 y_i y_j / F^2 + rho3 b_i b_j
inline SymMatrix rho_reconstruct(const Rho& r, const BaseBundle& B) {
    SymMatrix g(B.n);
    const double F = B.F;
    for (int i = 0; i < B.n; ++i)
        for (int j = i; j < B.n; ++j)
            g.set(i, j,
                  r.r0 * B.g(i, j) + r.r1 * (B.b[i] * B.ylow[j] + B.b[j] * B.ylow[i]) / F +
                      r.r2 * B.ylow[i] * B.ylow[j] / (F * F) + r.r3 * B.b[i] * B.b[j]);
    return g;
}

}  // namespace frl
