#pragma once

/**
 * @file family.hpp
 * @brief The six Randers-changed metrics F-bar = f(F, beta) + beta.
 *
 *   kropina              F^2/beta + beta
 *   generalized-kropina  F^(m+1)/beta^m + beta      (m != 0, -1)
 *   square               (F + beta)^2/F + beta
 *   matsumoto            F^2/(F - beta) + beta
 *   exponential          F e^(beta/F) + beta
 *   infinite-series      beta^2/(beta - F) + beta
 */

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "frl/base/minkowski.hpp"
#include "frl/errors.hpp"
#include "frl/tensor/jet.hpp"

namespace frl {

enum class FamilyKind { Kropina, GeneralizedKropina, Square, Matsumoto, Exponential, InfiniteSeries };

inline constexpr std::array<FamilyKind, 6> kAllFamilies{FamilyKind::Kropina,   FamilyKind::GeneralizedKropina,
                                                        FamilyKind::Square,    FamilyKind::Matsumoto,
                                                        FamilyKind::Exponential, FamilyKind::InfiniteSeries};

/** @brief Family selector; m is meaningful only for the generalized Kropina family. */
class Family {
public:
    Family() = default;
    explicit Family(FamilyKind k, double m = 2.0) : kind_(k), m_(k == FamilyKind::GeneralizedKropina ? m : 2.0) {
        if (k == FamilyKind::GeneralizedKropina && (m == 0.0 || m == -1.0 || !std::isfinite(m)))
            throw DomainError("generalized Kropina requires m not in {0, -1}");
    }
    static Family generalized_kropina(double m) { return Family(FamilyKind::GeneralizedKropina, m); }

    FamilyKind kind() const noexcept { return kind_; }
    double m() const noexcept { return m_; }

    /// Generalized Kropina with m = 1 is the Kropina metric.
    bool is_kropina_like() const noexcept {
        return kind_ == FamilyKind::Kropina || (kind_ == FamilyKind::GeneralizedKropina && m_ == 1.0);
    }

    std::string name() const { return std::string(kind_name(kind_)); }

    static constexpr std::string_view kind_name(FamilyKind k) {
        switch (k) {
            case FamilyKind::Kropina: return "kropina";
            case FamilyKind::GeneralizedKropina: return "generalized-kropina";
            case FamilyKind::Square: return "square";
            case FamilyKind::Matsumoto: return "matsumoto";
            case FamilyKind::Exponential: return "exponential";
            case FamilyKind::InfiniteSeries: return "infinite-series";
        }
        return "?";
    }

    static Family parse(std::string_view name, double m = 2.0) {
        for (FamilyKind k : kAllFamilies)
            if (kind_name(k) == name) return Family(k, m);
        throw InputError("unknown family '" + std::string(name) + "'");
    }

    bool operator==(const Family& o) const noexcept { return kind_ == o.kind_ && m_ == o.m_; }

private:
    FamilyKind kind_ = FamilyKind::Kropina;
    double m_ = 2.0;
};

/**
 * @brief f(F, beta) + beta over double or Jet, without domain checks.
 */
template <class T>
T fbar_expr(const Family& fam, const T& F, const T& beta) {
    using std::exp;
    using std::pow;
    switch (fam.kind()) {
        case FamilyKind::Kropina: return F * F / beta + beta;
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            return pow(F, m + 1.0) / pow(beta, m) + beta;
        }
        case FamilyKind::Square: {
            T u = F + beta;
            return u * u / F + beta;
        }
        case FamilyKind::Matsumoto: return F * F / (F - beta) + beta;
        case FamilyKind::Exponential: return F * exp(beta / F) + beta;
        case FamilyKind::InfiniteSeries: return beta * beta / (beta - F) + beta;
    }
    return T(0.0);
}

/** @brief ok, or the violated condition. */
struct DomainStatus {
    bool ok = true;
    std::string violation;
    explicit operator bool() const noexcept { return ok; }
};

/// Never throws.
inline DomainStatus domain_check(const Family& fam, double F, double beta) noexcept {
    auto bad = [](const char* why) { return DomainStatus{false, why}; };
    if (!(F > 0.0) || !std::isfinite(F)) return bad("F <= 0");
    if (!std::isfinite(beta)) return bad("beta not finite");
    const double eps = 1e-14 * F;
    switch (fam.kind()) {
        case FamilyKind::Kropina:
            if (std::fabs(beta) <= eps) return bad("beta = 0");
            break;
        case FamilyKind::GeneralizedKropina:
            if (std::fabs(beta) <= eps) return bad("beta = 0");
            if (beta < 0.0 && std::floor(fam.m()) != fam.m()) return bad("beta < 0 with non-integer m");
            break;
        case FamilyKind::Matsumoto:
            if (std::fabs(F - beta) <= eps) return bad("F = beta");
            break;
        case FamilyKind::InfiniteSeries:
            if (std::fabs(beta - F) <= eps) return bad("beta = F");
            break;
        case FamilyKind::Square:
        case FamilyKind::Exponential: break;
    }
    const double v = fbar_expr<double>(fam, F, beta);
    if (!std::isfinite(v)) return bad("F-bar not finite");
    if (!(v > 0.0)) return bad("F-bar <= 0");
    return {};
}

/** @brief F-bar with the domain check applied. */
inline double fbar(const Family& fam, double F, double beta) {
    const auto st = domain_check(fam, F, beta);
    if (!st) throw DomainError(fam.name() + ": " + st.violation);
    return fbar_expr<double>(fam, F, beta);
}

/** @brief phi-bar(s) = F-bar / alpha for the changed metric on a Riemannian base. */
inline PhiSpec family_phi(const Family& fam) {
    const double m = fam.m();
    const double inf = INFINITY;
    switch (fam.kind()) {
        case FamilyKind::Kropina:
            return {fam.name(), [](double s) { return 1.0 / s + s; }, [](double s) { return 1.0 - 1.0 / (s * s); },
                    [](double s) { return 2.0 / (s * s * s); }, inf};
        case FamilyKind::GeneralizedKropina:
            return {fam.name(), [m](double s) { return std::pow(s, -m) + s; },
                    [m](double s) { return 1.0 - m * std::pow(s, -m - 1.0); },
                    [m](double s) { return m * (m + 1.0) * std::pow(s, -m - 2.0); }, inf};
        case FamilyKind::Square:
            return {fam.name(), [](double s) { return 1.0 + 3.0 * s + s * s; }, [](double s) { return 3.0 + 2.0 * s; },
                    [](double) { return 2.0; }, inf};
        case FamilyKind::Matsumoto:
            return {fam.name(), [](double s) { return 1.0 / (1.0 - s) + s; },
                    [](double s) { return 1.0 / ((1.0 - s) * (1.0 - s)) + 1.0; },
                    [](double s) { return 2.0 / std::pow(1.0 - s, 3); }, 1.0};
        case FamilyKind::Exponential:
            return {fam.name(), [](double s) { return std::exp(s) + s; }, [](double s) { return std::exp(s) + 1.0; },
                    [](double s) { return std::exp(s); }, inf};
        case FamilyKind::InfiniteSeries:
            return {fam.name(), [](double s) { return s * s / (s - 1.0) + s; },
                    [](double s) { return (s * s - 2.0 * s) / ((s - 1.0) * (s - 1.0)) + 1.0; },
                    [](double s) { return 2.0 / std::pow(s - 1.0, 3); }, inf};
    }
    return randers_phi();
}

}  // namespace frl
