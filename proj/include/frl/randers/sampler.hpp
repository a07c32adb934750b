#pragma once

/**
 * @file sampler.hpp
 * @brief Seeded admissible samples (a, b, y) per family, and the per-family bounds
 *        used to keep denominators bounded and the changed metric positive.
 *
 * Bounds (empirical, not theory):
 *   square, exponential, matsumoto:  |b|_a <= 0.3 (hence |s| <= 0.3)
 *   kropina, generalized-kropina:    s in [0.2, 0.9]
 *   infinite-series:                 s >= 1.5
 */

#include <cmath>
#include <random>
#include <string>

#include "frl/base/bundle.hpp"
#include "frl/randers/family.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

inline constexpr int kMaxSampleAttempts = 10000;

struct FamilyBounds {
    std::string description;
    double norm_max = INFINITY;  ///< |b|_a upper bound
    double s_min = -INFINITY, s_max = INFINITY;
};

inline FamilyBounds family_bounds(const Family& fam) {
    switch (fam.kind()) {
        case FamilyKind::Square:
        case FamilyKind::Exponential:
        case FamilyKind::Matsumoto: return {"|b|_a <= 0.3 and |s| <= 0.3", 0.3, -0.3, 0.3};
        case FamilyKind::Kropina:
        case FamilyKind::GeneralizedKropina: return {"beta in [0.2 alpha, 0.9 alpha]", INFINITY, 0.2, 0.9};
        case FamilyKind::InfiniteSeries: return {"beta >= 1.5 alpha", INFINITY, 1.5, INFINITY};
    }
    return {};
}

/// Family bounds plus domain_check at a bundle.
inline bool within_family_bounds(const Family& fam, const BaseBundle& B) {
    const auto fb = family_bounds(fam);
    if (!domain_check(fam, B.F, B.beta)) return false;
    return std::sqrt(B.b2) <= fb.norm_max && B.s >= fb.s_min && B.s <= fb.s_max;
}

struct Sample {
    SymMatrix a;
    Covector b;
    Covector y;
};

namespace detail {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Covector normal_vec(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Covector v(n);
    for (double& x : v) x = nd(rng);
    return v;
}

}  // namespace detail

/// Random positive-definite a = M M^T + c I with entries of M in [-0.5, 0.5], c in [0.5, 1.5].
inline SymMatrix random_metric(std::mt19937_64& rng, int n) {
    std::vector<double> M(static_cast<std::size_t>(n) * n);
    for (double& v : M) v = detail::uniform(rng, -0.5, 0.5);
    const double c = detail::uniform(rng, 0.5, 1.5);
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = i == j ? c : 0.0;
            for (int k = 0; k < n; ++k) s += M[i * n + k] * M[j * n + k];
            a.set(i, j, s);
        }
    return a;
}

/**
 * @brief Draw (a, b, y) inside the family bounds; b is rescaled to hit a random
 *        target norm (square/exponential/matsumoto) or a random target s.
 */
inline Sample sample_admissible(std::mt19937_64& rng, const Family& fam, int n) {
    const auto fb = family_bounds(fam);
    for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
        Sample S;
        S.a = random_metric(rng, n);
        S.y = detail::normal_vec(rng, n);
        Covector w = detail::normal_vec(rng, n);
        const double F = std::sqrt(S.a.quad(S.y, S.y));
        const double wn = std::sqrt(inverse_pd(S.a).quad(w, w));
        if (!(F > 1e-3) || !(wn > 1e-6)) continue;
        double scale;
        if (std::isfinite(fb.norm_max)) {
            scale = detail::uniform(rng, 0.0, fb.norm_max) / wn;
        } else {
            const double hi = std::isfinite(fb.s_max) ? fb.s_max : 2.0 * fb.s_min;
            const double target = detail::uniform(rng, fb.s_min, hi);
            const double bw = dot(w, S.y) / F;
            if (std::fabs(bw) < 1e-3) continue;
            scale = target / bw;
            if (std::fabs(scale) * wn > 4.0 * hi) continue;  // keep |b|_a moderate
        }
        S.b = w;
        for (double& v : S.b) v *= scale;
        const BaseBundle B = base_bundle(S.a, S.b, S.y);
        if (within_family_bounds(fam, B)) return S;
    }
    throw InputError("no admissible sample for " + fam.name() + " within " + std::to_string(kMaxSampleAttempts) +
                     " attempts (bound: " + fb.description + ")");
}

}  // namespace frl
