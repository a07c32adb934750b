#pragma once

/**
 * @file derivatives.hpp
 * @brief Differentiation oracles over scalar fields f(x, y).
 *
 * A ScalarField is any callable that accepts (span<const T> x, span<const T> y)
 * for T = double and T = Jet and returns a T. Generic lambdas qualify.
 */

#include <cmath>
#include <concepts>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "frl/errors.hpp"
#include "frl/tensor/jet.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

template <class F>
concept ScalarField = requires(const F& f, std::span<const double> d, std::span<const Jet> j) {
    { f(d, d) } -> std::convertible_to<double>;
    { f(j, j) } -> std::convertible_to<Jet>;
};

/// How x-derivatives are obtained in flatness_pair.
enum class XMode { exact, finite_difference };

namespace detail {

inline void require_slit(const std::vector<double>& y) {
    for (double v : y)
        if (v != 0.0) return;
    throw DomainError("slit tangent bundle violated: y = 0");
}

inline void require_finite(const Jet& j) {
    if (!j.all_finite()) throw NumericError("non-finite intermediate value");
}

inline std::vector<Jet> constants(const std::vector<double>& v) { return {v.begin(), v.end()}; }

inline std::vector<Jet> variables(const std::shared_ptr<const JetSpace>& s, const std::vector<double>& v, int offset) {
    std::vector<Jet> r;
    r.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r.push_back(Jet::variable(s, offset + static_cast<int>(i), v[i]));
    return r;
}

template <ScalarField F>
Jet eval(const F& f, const std::vector<Jet>& x, const std::vector<Jet>& y) {
    Jet v = f(std::span<const Jet>(x), std::span<const Jet>(y));
    require_finite(v);
    return v;
}

inline std::vector<int> unit(int nv, std::initializer_list<int> idx) {
    std::vector<int> e(nv, 0);
    for (int i : idx) ++e[i];
    return e;
}

}  // namespace detail

/** @brief g_ij = (f^2 / 2)_{y^i y^j}, exact via second-order jets in y. */
template <ScalarField F>
SymMatrix hessian_half_square(const F& f, const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_slit(y);
    const int n = static_cast<int>(y.size());
    auto sp = JetSpace::get(n, 2);
    Jet v = detail::eval(f, detail::constants(x), detail::variables(sp, y, 0));
    Jet L = 0.5 * v * v;
    SymMatrix g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) g.set(i, j, L.derivative(detail::unit(n, {i, j})));
    return g;
}

/** @brief C_ijk = (f^2 / 4)_{y^i y^j y^k}, exact via third-order jets in y. */
template <ScalarField F>
Sym3Tensor third_deriv_quarter(const F& f, const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_slit(y);
    const int n = static_cast<int>(y.size());
    auto sp = JetSpace::get(n, 3);
    Jet v = detail::eval(f, detail::constants(x), detail::variables(sp, y, 0));
    Jet L = 0.25 * v * v;
    Sym3Tensor c(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) c.set(i, j, k, L.derivative(detail::unit(n, {i, j, k})));
    return c;
}

/** @brief f_{y^i}, exact. */
template <ScalarField F>
Covector y_gradient(const F& f, const std::vector<double>& x, const std::vector<double>& y) {
    detail::require_slit(y);
    const int n = static_cast<int>(y.size());
    auto sp = JetSpace::get(n, 1);
    Jet v = detail::eval(f, detail::constants(x), detail::variables(sp, y, 0));
    Covector g(n);
    for (int i = 0; i < n; ++i) g[i] = v.derivative(detail::unit(n, {i}));
    return g;
}

/** @brief Result of flatness_pair: f_{x^l} and f_{x^k y^l} y^k. */
struct FlatnessPair {
    Covector fx;
    Covector fxy_y;
};

/// Central-difference step for coordinate value xi.
inline double fd_step(double xi) {
    return std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, std::fabs(xi));
}

/**
 * @brief (f_{x^l}, f_{x^k y^l} y^k).
 *
 * XMode::exact evaluates f on a joint (x, y) jet of order 2, which is exact when
 * the x-dependence of f is polynomial (or any composition the jets support).
 * XMode::finite_difference uses central differences in x of exact y-jets.
 */
template <ScalarField F>
FlatnessPair flatness_pair(const F& f, const std::vector<double>& x, const std::vector<double>& y,
                           XMode mode = XMode::exact) {
    detail::require_slit(y);
    const int n = static_cast<int>(y.size());
    FlatnessPair r{Covector(n, 0.0), Covector(n, 0.0)};
    if (mode == XMode::exact) {
        auto sp = JetSpace::get(2 * n, 2);
        Jet v = detail::eval(f, detail::variables(sp, x, 0), detail::variables(sp, y, n));
        for (int l = 0; l < n; ++l) {
            r.fx[l] = v.derivative(detail::unit(2 * n, {l}));
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += v.derivative(detail::unit(2 * n, {k, n + l})) * y[k];
            r.fxy_y[l] = s;
        }
        return r;
    }
    auto sp = JetSpace::get(n, 1);
    const auto yj = detail::variables(sp, y, 0);
    for (int k = 0; k < n; ++k) {
        const double h = fd_step(x[k]);
        std::vector<double> xp(x), xm(x);
        xp[k] += h;
        xm[k] -= h;
        Jet vp = detail::eval(f, detail::constants(xp), yj);
        Jet vm = detail::eval(f, detail::constants(xm), yj);
        r.fx[k] = (vp.value() - vm.value()) / (2.0 * h);
        for (int l = 0; l < n; ++l) {
            const auto e = detail::unit(n, {l});
            r.fxy_y[l] += y[k] * (vp.derivative(e) - vm.derivative(e)) / (2.0 * h);
        }
    }
    for (int l = 0; l < n; ++l)
        if (!std::isfinite(r.fx[l]) || !std::isfinite(r.fxy_y[l])) throw NumericError("non-finite finite difference");
    return r;
}

/** @brief |f(x, lambda y) - lambda f(x, y)|. */
template <ScalarField F>
double homogeneity_residual(const F& f, const std::vector<double>& x, const std::vector<double>& y, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("homogeneity requires lambda > 0");
    detail::require_slit(y);
    std::vector<double> ly(y);
    for (double& v : ly) v *= lambda;
    const double a = f(std::span<const double>(x), std::span<const double>(ly));
    const double b = f(std::span<const double>(x), std::span<const double>(y));
    return std::fabs(a - lambda * b);
}

}  // namespace frl
