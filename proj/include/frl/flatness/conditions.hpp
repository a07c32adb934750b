#pragma once

/**
 * @file conditions.hpp
 * @brief Projective and dual flatness condition systems of the six families, evaluated from JetData.
 *
 * Keys are the stable identifiers used in reports. Conditions without a label of their
 * own carry the next free number of their family's sequence (see README).
 * Each residual is a covector; a condition holds when it vanishes.
 */

#include <string>
#include <vector>

#include "frl/base/bundle.hpp"
#include "frl/flatness/covector_ops.hpp"
#include "frl/randers/family.hpp"

namespace frl {

enum class FlatnessKind { projective, dual };

inline std::string kind_name(FlatnessKind k) { return k == FlatnessKind::projective ? "projective" : "dual"; }

struct ConditionResidual {
    std::string key;
    std::string expression;  ///< residual, written in jet notation
    Covector value;
};

namespace detail {

struct JetTerms {
    // Frequently used covector combinations.
    Covector A0Al, B0Bl, mixed, Al_B0, A0_Bl;
    Covector A0l_Axl, A0l_2Axl, B0l_Bxl, B0l_2Bxl, Bxl_B0l;
};

inline JetTerms terms(const JetData& J) {
    using namespace cvops;
    JetTerms t;
    t.A0Al = J.A_0 * J.A_l;
    t.B0Bl = J.beta_0 * J.beta_l;
    t.Al_B0 = J.beta_0 * J.A_l;
    t.A0_Bl = J.A_0 * J.beta_l;
    t.mixed = t.A0_Bl + t.Al_B0;
    t.A0l_Axl = J.A_0l - J.A_xl;
    t.A0l_2Axl = J.A_0l - 2.0 * J.A_xl;
    t.B0l_Bxl = J.beta_0l - J.beta_xl;
    t.B0l_2Bxl = J.beta_0l - 2.0 * J.beta_xl;
    t.Bxl_B0l = J.beta_xl - J.beta_0l;
    return t;
}

}  // namespace detail

/**
 * @brief Projective-flatness system of the family.
 *
 * Generalized Kropina with m = 1 is the Kropina metric and returns the Kropina system.
 */
inline std::vector<ConditionResidual> projective_conditions(const Family& fam, const JetData& J) {
    using namespace cvops;
    const auto t = detail::terms(J);
    const double b = J.beta, b2 = b * b, b3 = b2 * b;
    if (fam.is_kropina_like()) {
        return {
            {"PF1.1", "2 beta_0 beta_l + beta (beta_xl - beta_0l)", 2.0 * t.B0Bl + b * t.Bxl_B0l},
            {"PF1.2", "beta^3 (beta_0l - beta_xl) + beta^2 (A_0l - A_xl) - beta (A_0 beta_l + A_l beta_0)",
             b3 * t.B0l_Bxl + b2 * t.A0l_Axl - b * t.mixed},
        };
    }
    switch (fam.kind()) {
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            return {
                {"PF2.2", "beta^2 (A_0l - A_xl) - m beta (A_0 beta_l + beta_0 A_l)", b2 * t.A0l_Axl - m * b * t.mixed},
                {"PF2.4", "beta_0l - beta_xl", t.B0l_Bxl},
                {"PF2.5", "A_0 A_l", t.A0Al},
                {"PF2.6", "beta_0 beta_l", t.B0Bl},
            };
        }
        case FamilyKind::Square:
            return {
                {"PF3.1", "A_l A_0", t.A0Al},
                {"PF3.2", "beta^2 (A_xl - A_0l) - 2 beta (A_l beta_0 + beta_l A_0) - A_l A_0",
                 -b2 * t.A0l_Axl - 2.0 * b * t.mixed - t.A0Al},
                {"PF3.3", "4 beta (beta_0l - beta_xl) + A_0l - A_xl + 4 beta_l beta_0",
                 4.0 * b * t.B0l_Bxl + t.A0l_Axl + 4.0 * t.B0Bl},
                {"PF3.4", "beta_0l - beta_xl", t.B0l_Bxl},
            };
        case FamilyKind::Matsumoto:
            return {
                {"PF4.5", "A_0 A_l", t.A0Al},
                {"PF4.6", "A_0l - A_xl", t.A0l_Axl},
                {"PF4.7", "beta_0 beta_l", t.B0Bl},
                {"PF4.1", "beta_0l - beta_xl", t.B0l_Bxl},
                {"PF4.8", "A_0 beta_l + A_l beta_0", t.mixed},
            };
        case FamilyKind::Exponential:
            return {
                {"PF5.5", "A_0 A_l", t.A0Al},
                {"PF5.3", "A_0l - A_xl", t.A0l_Axl},
                {"PF5.6", "beta_0 beta_l", t.B0Bl},
                {"PF5.1", "beta_0l - beta_xl", t.B0l_Bxl},
                {"PF5.7", "A_0 beta_l + A_l beta_0", t.mixed},
            };
        case FamilyKind::InfiniteSeries:
            return {
                {"PF6.5", "A_0 A_l", t.A0Al},
                {"PF6.4", "A_0l - A_xl", t.A0l_Axl},
                {"PF6.6", "beta_0 beta_l", t.B0Bl},
                {"PF6.1", "beta_xl - beta_0l", t.Bxl_B0l},
                {"PF6.7", "A_0 beta_l + A_l beta_0", t.mixed},
            };
        case FamilyKind::Kropina: break;
    }
    return {};
}

/**
 * @brief Dual-flatness system of the family.
 *
 * The Kropina system keeps its second condition with the sign as stated,
 * beta^2 (A_0l - 2 A_xl) - 2 beta (beta_l A_0 - A_l beta_0); the Matsumoto system
 * keeps beta_0l = 0 and 2 beta_xl = 0 as two separate conditions.
 */
inline std::vector<ConditionResidual> dual_conditions(const Family& fam, const JetData& J) {
    using namespace cvops;
    const auto t = detail::terms(J);
    const double b = J.beta, b2 = b * b, b4 = b2 * b2, b5 = b4 * b;
    if (fam.is_kropina_like()) {
        return {
            {"LDF1.1", "3 beta_l beta_0 - beta beta_0l + 2 beta beta_xl",
             3.0 * t.B0Bl - b * J.beta_0l + 2.0 * b * J.beta_xl},
            {"LDF1.2", "beta^2 (A_0l - 2 A_xl) - 2 beta (beta_l A_0 - A_l beta_0)",
             b2 * t.A0l_2Axl - 2.0 * b * (t.A0_Bl - t.Al_B0)},
            {"LDF1.3", "beta^5 (beta_0l - 2 beta_xl) + beta^4 (A_0l + beta_l beta_0 - 2 A_xl) + beta^2 A_0 A_l",
             b5 * t.B0l_2Bxl + b4 * (t.A0l_2Axl + t.B0Bl) + b2 * t.A0Al},
        };
    }
    switch (fam.kind()) {
        case FamilyKind::GeneralizedKropina:
            return {
                {"LDF2.3", "A_0 A_l", t.A0Al},
                {"LDF2.9", "A_0l - 2 A_xl", t.A0l_2Axl},
                {"LDF2.10", "beta_0 beta_l", t.B0Bl},
                {"LDF2.11", "beta_0l - 2 beta_xl", t.B0l_2Bxl},
                {"LDF2.12", "A_l beta_0 + A_0 beta_l", t.mixed},
            };
        case FamilyKind::Square:
            return {
                {"LDF3.3", "A_0 A_l", t.A0Al},
                {"LDF3.10", "A_0l - 2 A_xl", t.A0l_2Axl},
                {"LDF3.9", "beta_0 beta_l", t.B0Bl},
                {"LDF3.4", "beta_0l - 2 beta_xl", t.B0l_2Bxl},
                {"LDF3.11", "beta_0 A_l + A_0 beta_l", t.mixed},
            };
        case FamilyKind::Matsumoto:
            return {
                {"LDF4.7", "A_0 A_l", t.A0Al},
                {"LDF4.8", "A_0l - 2 A_xl", t.A0l_2Axl},
                {"LDF4.9", "beta_0 beta_l", t.B0Bl},
                {"LDF4.10", "beta_0l", J.beta_0l},
                {"LDF4.11", "2 beta_xl", 2.0 * J.beta_xl},
                {"LDF4.12", "A_l beta_0 + A_0 beta_l", t.mixed},
            };
        case FamilyKind::Exponential:
            return {
                {"LDF5.6", "A_0 A_l", t.A0Al},
                {"LDF5.9", "A_0l - 2 A_xl", t.A0l_2Axl},
                {"LDF5.10", "beta_0 beta_l", t.B0Bl},
                {"LDF5.1", "beta_0l - 2 beta_xl", t.B0l_2Bxl},
                {"LDF5.8", "A_0 beta_l + beta_0 A_l", t.mixed},
            };
        case FamilyKind::InfiniteSeries:
            return {
                {"LDF6.6", "A_0 A_l", t.A0Al},
                {"LDF6.9", "A_0l - 2 A_xl", t.A0l_2Axl},
                {"LDF6.8", "beta_0 beta_l", t.B0Bl},
                {"LDF6.7", "beta_0l - 2 beta_xl", t.B0l_2Bxl},
                {"LDF6.10", "A_0 beta_l + beta_0 A_l", t.mixed},
            };
        case FamilyKind::Kropina: break;
    }
    return {};
}

inline std::vector<ConditionResidual> conditions(FlatnessKind kind, const Family& fam, const JetData& J) {
    return kind == FlatnessKind::projective ? projective_conditions(fam, J) : dual_conditions(fam, J);
}

}  // namespace frl
