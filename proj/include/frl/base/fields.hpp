#pragma once

/**
 * @file fields.hpp
 * @brief Position-dependent data a_ij(x) and b_i(x).
 *
 * Entries are polynomials (constant included), which differentiate exactly, or
 * opaque callables, which force the finite-difference x path.
 */

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "frl/base/polynomial.hpp"
#include "frl/errors.hpp"
#include "frl/tensor/derivatives.hpp"
#include "frl/tensor/jet.hpp"
#include "frl/tensor/tensors.hpp"

namespace frl {

class FieldEntry {
public:
    using Callable = std::function<double(std::span<const double>)>;

    FieldEntry() = default;
    explicit FieldEntry(Polynomial p) : poly_(std::move(p)) {}

    static FieldEntry constant(int nvars, double c) { return FieldEntry(Polynomial::constant(nvars, c)); }
    static FieldEntry callable(int nvars, Callable f) {
        FieldEntry e;
        e.poly_ = Polynomial(nvars);
        e.fn_ = std::make_shared<Callable>(std::move(f));
        return e;
    }

    bool is_polynomial() const noexcept { return !fn_; }
    bool is_constant() const noexcept { return !fn_ && poly_.is_constant(); }
    const Polynomial& polynomial() const noexcept { return poly_; }

    template <class T>
    T operator()(std::span<const T> x) const {
        if (!fn_) return poly_(x);
        if constexpr (std::is_same_v<T, Jet>) {
            for (const auto& xi : x)
                if (xi.space()) throw InputError("callable field entry cannot be expanded exactly in x");
        }
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) v[i] = value_of(x[i]);
        return T((*fn_)(std::span<const double>(v)));
    }
    double operator()(const std::vector<double>& x) const { return (*this)(std::span<const double>(x)); }

    /// d/dx^v at x: exact for polynomials, central difference for callables.
    double partial(int v, const std::vector<double>& x) const {
        if (!fn_) return poly_.derivative(v)(x);
        const double h = fd_step(x[v]);
        std::vector<double> xp(x), xm(x);
        xp[v] += h;
        xm[v] -= h;
        const double d = ((*fn_)(std::span<const double>(xp)) - (*fn_)(std::span<const double>(xm))) / (2.0 * h);
        if (!std::isfinite(d)) throw NumericError("non-finite finite difference of a field entry");
        return d;
    }

    bool same_as(const FieldEntry& o) const {
        if (fn_ || o.fn_) return fn_ == o.fn_;
        return poly_ == o.poly_;
    }

private:
    Polynomial poly_;
    std::shared_ptr<Callable> fn_;
};

/** @brief Symmetric field a_ij(x); PD is checked where it is evaluated. */
class MetricField {
public:
    MetricField() = default;

    /// Full n x n entry grid; entry (i,j) must match entry (j,i).
    MetricField(int n, std::vector<std::vector<FieldEntry>> rows) : n_(n) {
        check_dim(n);
        if (static_cast<int>(rows.size()) != n) throw InputError("metric must have n rows");
        for (const auto& r : rows)
            if (static_cast<int>(r.size()) != n) throw InputError("metric must have n columns");
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j)
                if (!rows[i][j].same_as(rows[j][i]))
                    throw InputError("metric entries (" + std::to_string(i) + "," + std::to_string(j) +
                                     ") and (" + std::to_string(j) + "," + std::to_string(i) + ") differ");
        e_.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) e_[i * n + j] = rows[std::min(i, j)][std::max(i, j)];
    }

    static MetricField constant(const SymMatrix& a) {
        const int n = a.n();
        std::vector<std::vector<FieldEntry>> rows(n, std::vector<FieldEntry>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rows[i][j] = FieldEntry::constant(n, a(i, j));
        return MetricField(n, std::move(rows));
    }
    static MetricField euclidean(int n) { return constant(SymMatrix::identity(n)); }

    int n() const noexcept { return n_; }
    const FieldEntry& entry(int i, int j) const { return e_[i * n_ + j]; }
    bool is_polynomial() const {
        for (const auto& e : e_)
            if (!e.is_polynomial()) return false;
        return true;
    }
    bool is_constant() const {
        for (const auto& e : e_)
            if (!e.is_constant()) return false;
        return true;
    }

    /// a_ij(x) without the PD check.
    SymMatrix raw(const std::vector<double>& x) const {
        check_point(x);
        SymMatrix a(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) a.set(i, j, entry(i, j)(x));
        return a;
    }

    /// a_ij(x), throwing DomainError when not positive-definite.
    SymMatrix at(const std::vector<double>& x) const {
        SymMatrix a = raw(x);
        if (!pd_check(a).ok) throw DomainError("metric not positive-definite at x");
        return a;
    }

    /// A = a_ij(x) y^i y^j for double or Jet scalars.
    template <class T>
    T quadratic(std::span<const T> x, std::span<const T> y) const {
        T s(0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) s = s + entry(i, j)(x) * y[i] * y[j];
        return s;
    }

    void check_point(const std::vector<double>& x) const {
        if (static_cast<int>(x.size()) != n_) throw InputError("point has wrong dimension");
    }

private:
    int n_ = 0;
    std::vector<FieldEntry> e_;
};

/** @brief 1-form field b_i(x). */
class OneFormField {
public:
    OneFormField() = default;
    OneFormField(int n, std::vector<FieldEntry> e) : n_(n), e_(std::move(e)) {
        check_dim(n);
        if (static_cast<int>(e_.size()) != n) throw InputError("one-form must have n entries");
    }
    static OneFormField constant(const Covector& b) {
        const int n = static_cast<int>(b.size());
        std::vector<FieldEntry> e;
        for (double v : b) e.push_back(FieldEntry::constant(n, v));
        return OneFormField(n, std::move(e));
    }

    int n() const noexcept { return n_; }
    const FieldEntry& entry(int i) const { return e_[i]; }
    bool is_polynomial() const {
        for (const auto& e : e_)
            if (!e.is_polynomial()) return false;
        return true;
    }
    bool is_constant() const {
        for (const auto& e : e_)
            if (!e.is_constant()) return false;
        return true;
    }

    Covector at(const std::vector<double>& x) const {
        Covector b(n_);
        for (int i = 0; i < n_; ++i) b[i] = e_[i](x);
        return b;
    }

    /// beta = b_i(x) y^i for double or Jet scalars.
    template <class T>
    T linear(std::span<const T> x, std::span<const T> y) const {
        T s(0.0);
        for (int i = 0; i < n_; ++i) s = s + e_[i](x) * y[i];
        return s;
    }

private:
    int n_ = 0;
    std::vector<FieldEntry> e_;
};

/// Exact x-derivatives are available only when every entry is polynomial.
inline XMode x_mode(const MetricField& a, const OneFormField& b) {
    return a.is_polynomial() && b.is_polynomial() ? XMode::exact : XMode::finite_difference;
}

}  // namespace frl
