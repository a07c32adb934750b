#pragma once

/**
 * @file tensors.hpp
 * @brief Small dense containers: covectors, symmetric matrices, fully symmetric
 *        3-tensors, plus the handful of dense linear-algebra helpers the rest of
 *        the library needs.
 */

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "frl/errors.hpp"

namespace frl {

using Covector = std::vector<double>;

inline constexpr int kMaxDim = 8;

inline void check_dim(int n) {
    if (n < 1 || n > kMaxDim) throw InputError("dimension must be in 1.." + std::to_string(kMaxDim));
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/** @brief Symmetric n x n matrix; set() writes both triangles so symmetry is exact. */
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n, double fill = 0.0) : n_(n), d_(static_cast<std::size_t>(n) * n, fill) {}

    static SymMatrix identity(int n) {
        SymMatrix m(n);
        for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
        return m;
    }
    /// Symmetrises (A + A^T)/2 so the invariant holds for any input.
    static SymMatrix from_eigen(const Eigen::MatrixXd& a) {
        SymMatrix m(static_cast<int>(a.rows()));
        for (int i = 0; i < m.n_; ++i)
            for (int j = i; j < m.n_; ++j) m.set(i, j, i == j ? a(i, i) : 0.5 * (a(i, j) + a(j, i)));
        return m;
    }

    int n() const noexcept { return n_; }
    double operator()(int i, int j) const { return d_[i * n_ + j]; }
    void set(int i, int j, double v) {
        d_[i * n_ + j] = v;
        d_[j * n_ + i] = v;
    }
    const std::vector<double>& data() const noexcept { return d_; }

    Eigen::MatrixXd to_eigen() const {
        Eigen::MatrixXd a(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) a(i, j) = (*this)(i, j);
        return a;
    }

    Covector apply(const Covector& v) const {
        Covector r(n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }
    double quad(const Covector& u, const Covector& v) const { return dot(u, apply(v)); }
    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }
    double max_abs() const { return frl::max_abs(d_); }
    bool symmetric_exact() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < i; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }
    std::vector<std::vector<double>> rows() const {
        std::vector<std::vector<double>> r(n_, std::vector<double>(n_));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
        return r;
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

inline double max_abs_diff(const SymMatrix& a, const SymMatrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    return m;
}

/** @brief Fully symmetric n x n x n tensor; set() writes all six permutations. */
class Sym3Tensor {
public:
    Sym3Tensor() = default;
    explicit Sym3Tensor(int n) : n_(n), d_(static_cast<std::size_t>(n) * n * n, 0.0) {}

    int n() const noexcept { return n_; }
    double operator()(int i, int j, int k) const { return d_[(i * n_ + j) * n_ + k]; }
    void set(int i, int j, int k, double v) {
        const std::array<std::array<int, 3>, 6> perms{{{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}}};
        for (const auto& p : perms) d_[(p[0] * n_ + p[1]) * n_ + p[2]] = v;
    }
    const std::vector<double>& data() const noexcept { return d_; }
    double max_abs() const { return frl::max_abs(d_); }

    /// T_ijk v^k
    SymMatrix contract(const Covector& v) const {
        SymMatrix r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                double s = 0.0;
                for (int k = 0; k < n_; ++k) s += (*this)(i, j, k) * v[k];
                r.set(i, j, s);
            }
        return r;
    }
    bool symmetric_exact() const {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) {
                    double v = (*this)(i, j, k);
                    if (v != (*this)(j, i, k) || v != (*this)(i, k, j) || v != (*this)(k, j, i)) return false;
                }
        return true;
    }
    std::vector<std::vector<std::vector<double>>> nested() const {
        std::vector<std::vector<std::vector<double>>> r(n_, std::vector<std::vector<double>>(n_, std::vector<double>(n_)));
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) r[i][j][k] = (*this)(i, j, k);
        return r;
    }

private:
    int n_ = 0;
    std::vector<double> d_;
};

inline double max_abs_diff(const Sym3Tensor& a, const Sym3Tensor& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
    return m;
}

/** @brief Cholesky positive-definiteness test with pivot floor 1e-12 * trace / n. */
struct PdCheck {
    bool ok = false;
    double min_pivot = 0.0;
    double threshold = 0.0;
};

inline PdCheck pd_check(const SymMatrix& a) {
    PdCheck r;
    const int n = a.n();
    r.threshold = 1e-12 * a.trace() / n;
    // Plain LL^T so the pivots are visible; n <= 8.
    std::vector<double> L(static_cast<std::size_t>(n) * n, 0.0);
    r.min_pivot = INFINITY;
    for (int j = 0; j < n; ++j) {
        double p = a(j, j);
        for (int k = 0; k < j; ++k) p -= L[j * n + k] * L[j * n + k];
        r.min_pivot = std::min(r.min_pivot, p);
        if (!(p > r.threshold) || !std::isfinite(p)) {
            r.ok = false;
            return r;
        }
        const double d = std::sqrt(p);
        L[j * n + j] = d;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= L[i * n + k] * L[j * n + k];
            L[i * n + j] = s / d;
        }
    }
    r.ok = r.threshold > 0.0;
    return r;
}

/// Inverse of a positive-definite matrix via Cholesky.
inline SymMatrix inverse_pd(const SymMatrix& a) {
    Eigen::LLT<Eigen::MatrixXd> llt(a.to_eigen());
    if (llt.info() != Eigen::Success) throw DomainError("metric not positive-definite");
    Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(a.n(), a.n()));
    return SymMatrix::from_eigen(inv);
}

/// Inverse of a general nonsingular symmetric matrix via full-pivot LU.
inline SymMatrix inverse_lu(const SymMatrix& a) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a.to_eigen());
    if (!lu.isInvertible()) throw SingularError("matrix", "matrix is singular");
    return SymMatrix::from_eigen(lu.inverse());
}

inline double determinant(const SymMatrix& a) { return Eigen::FullPivLU<Eigen::MatrixXd>(a.to_eigen()).determinant(); }

/// max |A B - I| for plain matrix products.
inline double identity_defect(const SymMatrix& a, const SymMatrix& b) {
    Eigen::MatrixXd p = a.to_eigen() * b.to_eigen();
    p -= Eigen::MatrixXd::Identity(a.n(), a.n());
    return p.cwiseAbs().maxCoeff();
}

}  // namespace frl
