#pragma once

/**
 * @file bundle.hpp
 * @brief Base-metric quantities at a point (x, y) and the first-order jets of A and beta.
 *
 * The base metric is Riemannian, F = sqrt(A) with A = a_ij(x) y^i y^j, so g = a and C = 0.
 */

#include <cmath>
#include <span>
#include <vector>

#include "frl/base/fields.hpp"
#include "frl/errors.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

/** @brief alpha = sqrt(a_ij(x) y^i y^j). */
inline double eval_alpha(const MetricField& a, const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_slit(y);
    const SymMatrix ax = a.at(x);
    return std::sqrt(ax.quad(y, y));
}

/** @brief beta = b_i(x) y^i. */
inline double eval_beta(const OneFormField& b, const std::vector<double>& x, const std::vector<double>& y) {
    return dot(b.at(x), y);
}

/** @brief Every base quantity the closed forms consume. */
struct BaseBundle {
    int n = 0;
    double F = 0.0;
    double beta = 0.0;
    double b2 = 0.0;  ///< a^{ij} b_i b_j
    double s = 0.0;   ///< beta / F
    SymMatrix g;      ///< g_ij
    SymMatrix ginv;   ///< g^{ij}
    Covector y;       ///< y^i
    Covector ylow;    ///< y_i = g_ij y^j
    Covector ell;     ///< l_i = F_{y^i} = y_i / F
    SymMatrix h;      ///< h_ij = g_ij - l_i l_j
    Covector b;       ///< b_i
    Covector bup;     ///< b^i = g^{ij} b_j
    Covector m;       ///< m_i = b_i - (beta / F^2) y_i
    Sym3Tensor C;     ///< base Cartan tensor
};

/** @brief Bundle from the Riemannian matrix a and covector b at a direction y. */
inline BaseBundle base_bundle(const SymMatrix& a, const Covector& b, const std::vector<double>& y) {
    detail::require_slit(y);
    if (!pd_check(a).ok) throw DomainError("metric not positive-definite at x");
    BaseBundle B;
    const int n = a.n();
    B.n = n;
    B.g = a;
    B.ginv = inverse_pd(a);
    B.y = y;
    B.ylow = a.apply(y);
    B.F = std::sqrt(dot(B.ylow, y));
    B.b = b;
    B.bup = B.ginv.apply(b);
    B.beta = dot(b, y);
    B.b2 = dot(B.bup, b);
    B.s = B.beta / B.F;
    B.ell.resize(n);
    B.m.resize(n);
    for (int i = 0; i < n; ++i) {
        B.ell[i] = B.ylow[i] / B.F;
        B.m[i] = b[i] - (B.beta / (B.F * B.F)) * B.ylow[i];
    }
    B.h = SymMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) B.h.set(i, j, a(i, j) - B.ell[i] * B.ell[j]);
    B.C = Sym3Tensor(n);
    return B;
}

inline BaseBundle base_bundle(const MetricField& a, const OneFormField& b, const std::vector<double>& x,
                              const std::vector<double>& y) {
    a.check_point(x);
    if (static_cast<int>(y.size()) != a.n() || b.n() != a.n()) throw InputError("dimension mismatch");
    return base_bundle(a.at(x), b.at(x), y);
}

/** @brief First-order x-jets of A and beta contracted as in the flatness conditions. */
struct JetData {
    double A = 0.0;
    Covector A_l;    ///< dA/dy^l
    double A_0 = 0.0;  ///< A_{x^i} y^i
    Covector A_0l;   ///< A_{x^i y^l} y^i
    Covector A_xl;   ///< A_{x^l}
    double beta = 0.0;
    Covector beta_l;   ///< b_l
    double beta_0 = 0.0;  ///< beta_{x^i} y^i
    Covector beta_0l;  ///< beta_{x^i y^l} y^i
    Covector beta_xl;  ///< beta_{x^l}
};

/**
 * @brief Jets from the entry derivatives of a and b.
 *
 * A_{x^k} = (d_k a_ij) y^i y^j, A_{x^k y^l} = 2 (d_k a_lj) y^j,
 * beta_{x^k} = (d_k b_j) y^j, beta_{x^k y^l} = d_k b_l.
 */
inline JetData jet_data(const MetricField& a, const OneFormField& b, const std::vector<double>& x,
                        const std::vector<double>& y) {
    a.check_point(x);
    const int n = a.n();
    if (static_cast<int>(y.size()) != n || b.n() != n) throw InputError("dimension mismatch");
    const SymMatrix ax = a.raw(x);
    const Covector bx = b.at(x);

    // da[k] = d a / d x^k, db[k][l] = d b_l / d x^k
    std::vector<SymMatrix> da(n, SymMatrix(n));
    std::vector<Covector> db(n, Covector(n));
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = i; j < n; ++j) da[k].set(i, j, a.entry(i, j).partial(k, x));
            db[k][i] = b.entry(i).partial(k, x);
        }
    }

    JetData J;
    J.A = ax.quad(y, y);
    J.A_l = ax.apply(y);
    for (double& v : J.A_l) v *= 2.0;
    J.beta = dot(bx, y);
    J.beta_l = bx;
    J.A_xl.assign(n, 0.0);
    J.A_0l.assign(n, 0.0);
    J.beta_xl.assign(n, 0.0);
    J.beta_0l.assign(n, 0.0);
    for (int k = 0; k < n; ++k) {
        J.A_xl[k] = da[k].quad(y, y);
        J.beta_xl[k] = dot(db[k], y);
    }
    J.A_0 = dot(J.A_xl, y);
    J.beta_0 = dot(J.beta_xl, y);
    for (int l = 0; l < n; ++l) {
        double sa = 0.0, sb = 0.0;
        for (int k = 0; k < n; ++k) {
            double row = 0.0;
            for (int j = 0; j < n; ++j) row += da[k](l, j) * y[j];
            sa += 2.0 * row * y[k];
            sb += db[k][l] * y[k];
        }
        J.A_0l[l] = sa;
        J.beta_0l[l] = sb;
    }
    return J;
}

}  // namespace frl
