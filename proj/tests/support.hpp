#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <random>
#include <vector>

#include "frl/frl.hpp"

namespace frl::testing {

inline Polynomial shifted_polynomial(std::mt19937_64& rng, int n, const std::vector<double>& x0, double value,
                                     double scale, int degree) {
    // value at x0 is `value`; random linear and quadratic terms of size `scale`.
    std::uniform_real_distribution<double> u(-scale, scale);
    Polynomial p(n);
    for (int k = 0; k < n; ++k) {
        std::vector<int> e(n, 0);
        e[k] = 1;
        p.add_term(e, u(rng));
        if (degree < 2) continue;
        for (int l = k; l < n; ++l) {
            std::vector<int> q(n, 0);
            ++q[k];
            ++q[l];
            p.add_term(q, u(rng));
        }
    }
    p.add_term(std::vector<int>(n, 0), value - p(x0));
    return p;
}

struct FieldSample {
    MetricField a;
    OneFormField b;
    std::vector<double> x, y;
};

/**
 * @brief Polynomial fields of degree <= `degree` whose values at a random x reproduce an
 *        admissible (a, b, y) sample of the family.
 */
inline FieldSample random_polynomial_sample(std::mt19937_64& rng, const Family& fam, int n, int degree = 2,
                                            double scale = 0.3) {
    const Sample S = sample_admissible(rng, fam, n);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    FieldSample r;
    r.x.resize(n);
    for (double& v : r.x) v = ux(rng);
    r.y = S.y;
    std::vector<std::vector<FieldEntry>> rows(n, std::vector<FieldEntry>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            FieldEntry e(shifted_polynomial(rng, n, r.x, S.a(i, j), scale, degree));
            rows[i][j] = e;
            rows[j][i] = e;
        }
    r.a = MetricField(n, rows);
    std::vector<FieldEntry> be;
    for (int i = 0; i < n; ++i) be.emplace_back(shifted_polynomial(rng, n, r.x, S.b[i], scale, degree));
    r.b = OneFormField(n, be);
    return r;
}

/// a = delta, b_i(x) = (eps x^1, 0, ...).
inline FieldSample linear_one_form_scenario(int n, double eps, std::vector<double> x, std::vector<double> y) {
    FieldSample r{MetricField::euclidean(n), OneFormField::constant(Covector(n, 0.0)), std::move(x), std::move(y)};
    std::vector<FieldEntry> be;
    Polynomial p(n);
    std::vector<int> e(n, 0);
    e[0] = 1;
    p.add_term(e, eps);
    be.emplace_back(p);
    for (int i = 1; i < n; ++i) be.push_back(FieldEntry::constant(n, 0.0));
    r.b = OneFormField(n, be);
    return r;
}

inline double rel_delta(const Covector& a, const Covector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d / std::max({1e-300, max_abs(a), max_abs(b)});
}

}  // namespace frl::testing
