#pragma once

/**
 * @file jet.hpp
 * @brief Truncated multivariate Taylor polynomials ("jets") with exact arithmetic
 *        up to a fixed total order.
 *
 * A Jet over a JetSpace(N, K) stores the Taylor coefficients of a function of N
 * variables around an expansion point, for every monomial of total degree <= K.
 * Arithmetic and the elementary functions propagate those coefficients exactly
 * (up to floating rounding), so mixed derivatives of any order <= K are read off
 * directly: d^e f = coeff(e) * prod(e_i!).
 */

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frl/errors.hpp"

namespace frl {

/** @brief Monomial layout and multiplication table for N variables truncated at order K. */
class JetSpace {
public:
    struct Product {
        std::uint32_t lhs, rhs, out;
    };

    /// Shared, cached space; the same (nvars, order) always yields the same pointer.
    static std::shared_ptr<const JetSpace> get(int nvars, int order) {
        static std::mutex mtx;
        static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
        if (nvars < 0 || order < 0) throw std::invalid_argument("JetSpace: negative size");
        std::lock_guard<std::mutex> lock(mtx);
        auto& slot = cache[{nvars, order}];
        if (!slot) slot = std::shared_ptr<const JetSpace>(new JetSpace(nvars, order));
        return slot;
    }

    int nvars() const noexcept { return nvars_; }
    int order() const noexcept { return order_; }
    std::size_t size() const noexcept { return degree_.size(); }
    int degree(std::size_t idx) const { return degree_[idx]; }
    const int* exponents(std::size_t idx) const { return &exps_[idx * nvars_]; }
    const std::vector<Product>& products() const noexcept { return products_; }

    /// Index of the monomial with the given exponents; throws if its degree exceeds the order.
    std::size_t index(const std::vector<int>& e) const {
        auto it = lookup_.find(e);
        if (it == lookup_.end()) throw std::out_of_range("JetSpace: monomial outside truncation");
        return it->second;
    }
    std::size_t var_index(int v) const {
        std::vector<int> e(nvars_, 0);
        e[v] = 1;
        return index(e);
    }

private:
    JetSpace(int nvars, int order) : nvars_(nvars), order_(order) {
        std::vector<int> e(nvars, 0);
        for (int d = 0; d <= order; ++d) enumerate(e, 0, d);
        for (std::size_t i = 0; i < size(); ++i) {
            for (std::size_t j = 0; j < size(); ++j) {
                if (degree_[i] + degree_[j] > order) continue;
                std::vector<int> s(nvars);
                for (int v = 0; v < nvars; ++v) s[v] = exps_[i * nvars + v] + exps_[j * nvars + v];
                products_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                                     static_cast<std::uint32_t>(lookup_.at(s))});
            }
        }
    }

    void enumerate(std::vector<int>& e, int var, int remaining) {
        if (var == nvars_ || nvars_ == 0) {
            if (remaining != 0) return;
            lookup_.emplace(e, degree_.size());
            int d = 0;
            for (int x : e) d += x;
            degree_.push_back(d);
            exps_.insert(exps_.end(), e.begin(), e.end());
            return;
        }
        if (var == nvars_ - 1) {
            e[var] = remaining;
            enumerate(e, var + 1, 0);
            e[var] = 0;
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[var] = k;
            enumerate(e, var + 1, remaining - k);
        }
        e[var] = 0;
    }

    int nvars_;
    int order_;
    std::vector<int> exps_;
    std::vector<int> degree_;
    std::map<std::vector<int>, std::size_t> lookup_;
    std::vector<Product> products_;
};

/** @brief Truncated Taylor expansion; a Jet without a space is a plain constant. */
class Jet {
public:
    Jet() : c_(1, 0.0) {}
    Jet(double v) : c_(1, v) {}  // NOLINT: implicit promotion from scalars is intended
    Jet(std::shared_ptr<const JetSpace> s, double v) : sp_(std::move(s)), c_(sp_->size(), 0.0) {
        c_[0] = v;
    }

    /// The independent variable `var` of the space, expanded around `value`.
    static Jet variable(const std::shared_ptr<const JetSpace>& s, int var, double value) {
        Jet j(s, value);
        if (s->order() >= 1) j.c_[s->var_index(var)] = 1.0;
        return j;
    }

    double value() const noexcept { return c_[0]; }
    const JetSpace* space() const noexcept { return sp_.get(); }
    const std::shared_ptr<const JetSpace>& space_ptr() const noexcept { return sp_; }
    std::size_t size() const noexcept { return c_.size(); }
    double coeff(std::size_t idx) const { return c_[idx]; }

    /// Raw coefficient of the monomial with exponents `e` (0 for constants).
    double coeff(const std::vector<int>& e) const {
        if (!sp_) {
            for (int x : e)
                if (x != 0) return 0.0;
            return c_[0];
        }
        return c_[sp_->index(e)];
    }

    /// Partial derivative d^e f at the expansion point.
    double derivative(const std::vector<int>& e) const {
        double fact = 1.0;
        for (int x : e)
            for (int k = 2; k <= x; ++k) fact *= k;
        return coeff(e) * fact;
    }

    bool all_finite() const {
        for (double v : c_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    Jet operator-() const {
        Jet r(*this);
        for (double& v : r.c_) v = -v;
        return r;
    }

    Jet& operator+=(const Jet& o) {
        if (!o.sp_) {
            c_[0] += o.c_[0];
            return *this;
        }
        promote(o.sp_);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) { return *this += -o; }
    Jet& operator*=(const Jet& o) {
        *this = *this * o;
        return *this;
    }
    Jet& operator/=(const Jet& o) {
        *this = *this / o;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        if (!a.sp_) return b.scaled(a.c_[0]);
        if (!b.sp_) return a.scaled(b.c_[0]);
        check_same(a, b);
        Jet r(a.sp_, 0.0);
        const double* x = a.c_.data();
        const double* y = b.c_.data();
        double* z = r.c_.data();
        for (const auto& p : a.sp_->products()) z[p.out] += x[p.lhs] * y[p.rhs];
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (!b.sp_) return a.scaled(1.0 / b.c_[0]);
        return a * reciprocal(b);
    }

    /**
     * @brief f(u) from the scaled derivatives d[k] = f^(k)(u0)/k!, k = 0..order.
     */
    friend Jet compose(const Jet& u, const std::vector<double>& d) {
        if (!u.sp_) return Jet(d[0]);
        Jet delta(u);
        delta.c_[0] = 0.0;
        const int K = u.sp_->order();
        Jet r(u.sp_, d[K]);
        for (int k = K - 1; k >= 0; --k) {
            r = r * delta;
            r.c_[0] += d[k];
        }
        return r;
    }

    friend Jet reciprocal(const Jet& u) {
        const double u0 = u.c_[0];
        const int K = u.order();
        std::vector<double> d(K + 1);
        double p = 1.0 / u0;
        for (int k = 0; k <= K; ++k) {
            d[k] = (k % 2 == 0 ? p : -p);
            p /= u0;
        }
        return compose(u, d);
    }

    int order() const noexcept { return sp_ ? sp_->order() : 0; }

private:
    void promote(const std::shared_ptr<const JetSpace>& s) {
        if (sp_) {
            if (sp_ != s) throw std::logic_error("Jet: mixing different spaces");
            return;
        }
        double v = c_[0];
        sp_ = s;
        c_.assign(s->size(), 0.0);
        c_[0] = v;
    }
    static void check_same(const Jet& a, const Jet& b) {
        if (a.sp_ != b.sp_) throw std::logic_error("Jet: mixing different spaces");
    }
    Jet scaled(double s) const {
        Jet r(*this);
        for (double& v : r.c_) v *= s;
        return r;
    }

    std::shared_ptr<const JetSpace> sp_;
    std::vector<double> c_;
};

inline Jet exp(const Jet& u) {
    const int K = u.order();
    std::vector<double> d(K + 1);
    double e = std::exp(u.value()), f = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) f *= k;
        d[k] = e / f;
    }
    return compose(u, d);
}

inline Jet log(const Jet& u) {
    const double u0 = u.value();
    if (!(u0 > 0.0)) throw NumericError("log of non-positive value");
    const int K = u.order();
    std::vector<double> d(K + 1);
    d[0] = std::log(u0);
    double p = 1.0;
    for (int k = 1; k <= K; ++k) {
        p /= u0;
        d[k] = (k % 2 == 1 ? p : -p) / k;
    }
    return compose(u, d);
}

/// u^p; a negative base is allowed only for integer p.
inline Jet pow(const Jet& u, double p) {
    const double u0 = u.value();
    const bool integral = std::floor(p) == p;
    if (u0 < 0.0 && !integral) throw NumericError("real power of a negative value");
    const int K = u.order();
    std::vector<double> d(K + 1);
    double binom = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) binom *= (p - (k - 1)) / k;
        d[k] = binom * std::pow(u0, p - k);
    }
    return compose(u, d);
}

inline Jet sqrt(const Jet& u) {
    if (!(u.value() > 0.0)) throw NumericError("square root of non-positive value");
    return pow(u, 0.5);
}

inline double value_of(double v) noexcept { return v; }
inline double value_of(const Jet& j) noexcept { return j.value(); }

}  // namespace frl
