#pragma once

/**
 * @file polynomial.hpp
 * @brief Real polynomials in n variables stored as coefficient maps over multi-indices.
 */

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "frl/errors.hpp"

namespace frl {

inline constexpr int kDefaultMaxDegree = 4;

class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, double c) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    /// Accumulates c * x^e; rejects wrong arity, negative exponents and degrees above max_degree.
    void add_term(const Exponents& e, double c, int max_degree = kDefaultMaxDegree) {
        if (static_cast<int>(e.size()) != nvars_)
            throw InputError("polynomial term has " + std::to_string(e.size()) + " exponents, expected " +
                             std::to_string(nvars_));
        int d = 0;
        for (int x : e) {
            if (x < 0) throw InputError("negative exponent in polynomial term");
            d += x;
        }
        if (d > max_degree)
            throw InputError("polynomial term of degree " + std::to_string(d) + " exceeds max degree " +
                             std::to_string(max_degree));
        if (!std::isfinite(c)) throw InputError("non-finite polynomial coefficient");
        double& slot = terms_[e];
        slot += c;
        if (slot == 0.0) terms_.erase(e);
    }

    int nvars() const noexcept { return nvars_; }
    const std::map<Exponents, double>& terms() const noexcept { return terms_; }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool is_constant() const {
        for (const auto& [e, c] : terms_)
            for (int x : e)
                if (x != 0) return false;
        return true;
    }

    /// Exact partial derivative with respect to variable v.
    Polynomial derivative(int v) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[v] == 0) continue;
            Exponents f(e);
            f[v] -= 1;
            r.terms_[f] += c * e[v];
        }
        return r;
    }

    /// Evaluation over any ring-like scalar (double or Jet).
    template <class T>
    T operator()(std::span<const T> x) const {
        T sum(0.0);
        for (const auto& [e, c] : terms_) {
            T term(c);
            for (int v = 0; v < nvars_; ++v)
                for (int k = 0; k < e[v]; ++k) term = term * x[v];
            sum = sum + term;
        }
        return sum;
    }
    double operator()(const std::vector<double>& x) const { return (*this)(std::span<const double>(x)); }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

private:
    int nvars_ = 0;
    std::map<Exponents, double> terms_;
};

}  // namespace frl
