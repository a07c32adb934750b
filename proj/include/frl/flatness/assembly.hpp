#pragma once

/**
 * @file assembly.hpp
 * @brief Flatness residuals of F-bar assembled from JetData through the long per-family brackets.
 *
 * Each function returns the full residual (prefactor included), so it can be compared
 * directly against flatness_direct. With BracketForm::printed the bracket is evaluated
 * with the grouping as it was originally derived; five of the twelve brackets differ
 * from the true residual in that form (listed by assembly_corrections).
 */

#include <cmath>
#include <string>
#include <vector>

#include "frl/base/bundle.hpp"
#include "frl/flatness/conditions.hpp"
#include "frl/flatness/covector_ops.hpp"
#include "frl/randers/family.hpp"

namespace frl {

enum class BracketForm { corrected, printed };

struct AssemblyCorrection {
    FamilyKind family;
    FlatnessKind kind;
    std::string change;
};

inline std::vector<AssemblyCorrection> assembly_corrections() {
    return {
        {FamilyKind::Square, FlatnessKind::projective,
         "leading A_0 A_l coefficient is (3 beta^2 + A), not 3 beta^2"},
        {FamilyKind::Kropina, FlatnessKind::dual,
         "second group is beta^2 (A_0l - 2 A_xl) - 2 beta (beta_l A_0 + A_l beta_0)"},
        {FamilyKind::Matsumoto, FlatnessKind::dual,
         "A^(5/2), A^2, A^(3/2) groups carry 12, 6, -6 beta_0 beta_l and no stray beta_0l terms"},
        {FamilyKind::Exponential, FlatnessKind::dual,
         "last group is 2 beta^2 (A_0 beta_l + beta_0 A_l) + beta (e + 1) A_0 A_l"},
        {FamilyKind::InfiniteSeries, FlatnessKind::dual, "bracket over-counts the residual by 2 beta_0 beta_l"},
    };
}

inline bool bracket_differs_when_printed(FamilyKind fam, FlatnessKind kind) {
    for (const auto& c : assembly_corrections())
        if (c.family == fam && c.kind == kind) return true;
    return false;
}

namespace detail {

struct Sym {
    double A, r, B, A0, B0;
    Covector Al, Bl, A0l, Axl, B0l, Bxl;
    Covector A0Al, B0Bl, mix;
};

inline Sym sym(const JetData& J) {
    using namespace cvops;
    Sym s{J.A, std::sqrt(J.A), J.beta, J.A_0, J.beta_0, J.A_l, J.beta_l, J.A_0l, J.A_xl, J.beta_0l, J.beta_xl,
          {}, {}, {}};
    s.A0Al = s.A0 * s.Al;
    s.B0Bl = s.B0 * s.Bl;
    s.mix = s.A0 * s.Bl + s.B0 * s.Al;
    return s;
}

}  // namespace detail

/** @brief F-bar_{x^k y^l} y^k - F-bar_{x^l} assembled from the per-family bracket. */
inline Covector projective_assembled(const Family& fam, const JetData& J, BracketForm form = BracketForm::corrected) {
    using namespace cvops;
    const auto s = detail::sym(J);
    const double A = s.A, r = s.r, B = s.B, B2 = B * B, B3 = B2 * B;
    const Covector dA = s.A0l - s.Axl, dB = s.B0l - s.Bxl;
    if (fam.kind() == FamilyKind::Kropina) {
        const Covector e1 = 2.0 * s.B0Bl - B * dB;
        const Covector e2 = B3 * dB + B2 * dA - B * s.mix;
        return (A * e1 + e2) / B3;
    }
    switch (fam.kind()) {
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            const Covector in = (m - 1.0) / 2.0 * B2 * s.A0Al + A * (B2 * dA - m * B * s.mix) +
                                2.0 * m * A * A * (-(B / (m + 1.0)) * dB + s.B0Bl) +
                                2.0 / (m + 1.0) * std::pow(B, m + 2.0) * std::pow(A, (3.0 - m) / 2.0) * dB;
            return (m + 1.0) / (2.0 * std::pow(B, m + 2.0)) * std::pow(A, (m - 3.0) / 2.0) * in;
        }
        case FamilyKind::Square: {
            const Covector p32 = -B2 * dA - 2.0 * B * s.mix - s.A0Al;
            const Covector p33 = 4.0 * B * dB + dA + 4.0 * s.B0Bl;
            const double lead = form == BracketForm::corrected ? 3.0 * B2 + A : 3.0 * B2;
            const Covector in = lead * s.A0Al + 2.0 * A * p32 + 2.0 * A * A * p33 + 12.0 * std::pow(A, 2.5) * dB;
            return 0.25 * std::pow(A, -2.5) * in;
        }
        case FamilyKind::Matsumoto: {
            const Covector p42 = dA + 4.0 * s.B0Bl - 8.0 * B * dB;
            const Covector p43 = 2.0 * B2 * dB - B * dA;
            const Covector p44 = -4.0 * B3 * dB + 4.0 * B2 * dA - 4.0 * B * s.mix - s.A0Al;
            const Covector in = 8.0 * A * A * dB + 2.0 * std::pow(A, 1.5) * p42 + 6.0 * A * p43 + r * p44 +
                                3.0 * B * s.A0Al;
            return in / (4.0 * r * std::pow(r - B, 3));
        }
        case FamilyKind::Exponential: {
            const double e = std::exp(B / r);
            const Covector in = 4.0 * std::pow(A, 2.5) * (e + 1.0) * dB + 2.0 * A * A * e * (2.0 * s.B0Bl + dA) -
                                2.0 * B * std::pow(A, 1.5) * e * dA - A * e * (s.A0Al + 2.0 * B * s.mix) +
                                r * B * e * s.A0Al + B2 * e * s.A0Al;
            return in / (4.0 * std::pow(A, 2.5));
        }
        case FamilyKind::InfiniteSeries: {
            const Covector p62 = 5.0 * B * dB + 2.0 * s.B0Bl;
            const Covector p63 = 4.0 * B3 * dB - B2 * dA - 2.0 * B * s.mix;
            const Covector in = -4.0 * A * A * A * dB + 4.0 * std::pow(A, 2.5) * p62 - 24.0 * A * A * B2 * dB +
                                2.0 * std::pow(A, 1.5) * p63 + 2.0 * A * B3 * dA + 3.0 * r * B2 * s.A0Al -
                                B3 * s.A0Al;
            return in / (4.0 * std::pow(A, 1.5) * std::pow(B - r, 3));
        }
        case FamilyKind::Kropina: break;
    }
    return {};
}

/** @brief L_{x^k y^l} y^k - 2 L_{x^l}, L = F-bar^2, assembled from the per-family bracket. */
inline Covector dual_assembled(const Family& fam, const JetData& J, BracketForm form = BracketForm::corrected) {
    using namespace cvops;
    const auto s = detail::sym(J);
    const bool fixed = form == BracketForm::corrected;
    const double A = s.A, r = s.r, B = s.B, B2 = B * B, B3 = B2 * B, B4 = B3 * B, B5 = B4 * B;
    const Covector dA = s.A0l - 2.0 * s.Axl, dB = s.B0l - 2.0 * s.Bxl;
    const Covector dBneg = 2.0 * s.Bxl - s.B0l;
    switch (fam.kind()) {
        case FamilyKind::Kropina: {
            const Covector l1 = 3.0 * s.B0Bl - B * s.B0l + 2.0 * B * s.Bxl;
            const Covector l2 = fixed ? B2 * dA - 2.0 * B * s.mix
                                      : B2 * dA - 2.0 * B * (s.A0 * s.Bl - s.B0 * s.Al);
            const Covector l3 = B5 * dB + B4 * (dA + s.B0Bl) + B2 * s.A0Al;
            return 2.0 / B4 * (A * A * l1 + A * l2 + l3);
        }
        case FamilyKind::GeneralizedKropina: {
            const double m = fam.m();
            const Covector d21 = B * dBneg + (2.0 * m + 1.0) * s.B0Bl;
            const Covector d22 = B2 * dA - 2.0 * m * B * s.mix;
            const Covector d25 = B2 * dA - (m - 1.0) * B * s.mix;
            const Covector d27 = B * dB + s.B0Bl;
            const Covector g1 = 2.0 * m * A * A * d21 + (m + 1.0) * A * d22 + m * (m + 1.0) * B2 * s.A0Al;
            const Covector g2 = 2.0 * (m - 1.0) * A * A * (B * dBneg + m * s.B0Bl) + (m + 1.0) * A * d25 +
                                (m * m - 1.0) / 2.0 * B2 * s.A0Al;
            return std::pow(A, m - 1.0) / std::pow(B, 2.0 * m + 2.0) * g1 +
                   std::pow(A, (m - 3.0) / 2.0) / std::pow(B, m + 1.0) * g2 + 2.0 * d27;
        }
        case FamilyKind::Square: {
            const Covector d31 = B3 * dB + 3.0 * B2 * s.B0Bl;
            const Covector d32 = -B4 * dA - 4.0 * B3 * s.mix;
            const Covector d35 = 6.0 * B2 * dB + B * (dA + 12.0 * s.B0Bl) + s.mix;
            const Covector d36 = -2.0 * B3 * dA - 6.0 * B2 * s.mix - B * s.A0Al;
            const Covector d38 = dA + 22.0 * s.B0Bl + 22.0 * B * dB;
            return (4.0 * A * A * d31 + A * d32 + 2.0 * B4 * s.A0Al) / (A * A * A) +
                   1.5 / std::pow(A, 2.5) * (4.0 * A * A * A * dB + 2.0 * A * A * d35 + A * d36 + 3.0 * B3 * s.A0Al) +
                   d38;
        }
        case FamilyKind::Matsumoto: {
            const Covector d42 = fixed ? (dA + 12.0 * s.B0Bl) - 4.0 * B * dB
                                       : (dA + 10.0 * s.B0Bl + 2.0 * s.B0l) - 4.0 * B * dB;
            const Covector d43 = fixed ? s.mix - B * (dA + 6.0 * s.B0Bl) - 3.0 * B2 * dB
                                       : s.mix - B * (dA + 4.0 * s.B0Bl + 2.0 * s.B0l) - 3.0 * B2 * dB;
            const Covector d44 = fixed ? 4.0 * B * s.mix + B2 * (dA - 6.0 * s.B0Bl) - 6.0 * B3 * dB
                                       : 4.0 * B * s.mix + B2 * (dA - 5.0 * s.B0Bl - s.B0l) - 6.0 * B3 * dB;
            const Covector d45 = B * s.A0Al - 3.0 * B2 * s.mix - B3 * (5.0 * dA - 8.0 * s.B0Bl) + 8.0 * B4 * dB;
            const Covector d46 = 2.0 * B2 * s.A0Al + B4 * (s.B0Bl - dA) + B5 * dB;
            const Covector in = 8.0 * A * A * A * dB + 2.0 * std::pow(A, 2.5) * d42 + 4.0 * A * A * d43 -
                                4.0 * std::pow(A, 1.5) * d44 - 2.0 * A * d45 + 4.0 * r * d46 - 3.0 * B3 * s.A0Al;
            return in / (2.0 * r * std::pow(r - B, 4));
        }
        case FamilyKind::Exponential: {
            const double e = std::exp(B / r);
            const Covector d52 = 2.0 * B * (e + 1.0) * dB + e * e * dA + 4.0 * e * (e + 1.0) * s.B0Bl + 2.0 * s.B0Bl;
            const Covector d53 = B * ((1.0 - e) * dA + 2.0 * s.B0Bl) + (e + 1.0) * s.mix;
            const Covector d54 = B2 * dA + B * (2.0 * e + 1.0) * s.mix;
            const Covector d55 = (fixed ? 2.0 * B2 : 2.0) * s.mix + B * (e + 1.0) * s.A0Al;
            const Covector in = 4.0 * A * A * A * e * (e + 1.0) * dB + 2.0 * std::pow(A, 2.5) * d52 +
                                2.0 * e * A * A * d53 - 2.0 * e * std::pow(A, 1.5) * d54 - e * A * d55 +
                                B2 * e * (2.0 * e + 1.0) * r * s.A0Al + B3 * e * s.A0Al;
            return in / (2.0 * std::pow(A, 2.5));
        }
        case FamilyKind::InfiniteSeries: {
            const Covector d61 = B * dB + 2.0 * s.B0Bl;
            const Covector d62 = -28.0 * B2 * dB - 40.0 * B * s.B0Bl + B * dA + 3.0 * s.mix;
            const Covector d63 = 8.0 * B * dB + 15.0 * s.B0Bl;
            const Covector d64 = 8.0 * B2 * dB + 10.0 * B * s.B0Bl - 3.0 * B * dA - 8.0 * s.mix;
            const Covector d65 = 4.0 * B2 * dA + 4.0 * B * s.mix - 3.0 * s.A0Al;
            const Covector in = 4.0 * std::pow(A, 3.5) * d61 - 28.0 * A * A * A * B * d61 + 2.0 * A * A * B2 * d62 +
                                8.0 * std::pow(A, 2.5) * B2 * d63 + 2.0 * std::pow(A, 1.5) * B3 * d64 +
                                A * B3 * d65 + 8.0 * B4 * r * s.A0Al - 2.0 * B5 * s.A0Al;
            const Covector printed = in / (2.0 * std::pow(A, 1.5) * std::pow(B - r, 4));
            return fixed ? printed - 2.0 * s.B0Bl : printed;
        }
    }
    return {};
}

inline Covector assembled(FlatnessKind kind, const Family& fam, const JetData& J,
                          BracketForm form = BracketForm::corrected) {
    return kind == FlatnessKind::projective ? projective_assembled(fam, J, form) : dual_assembled(fam, J, form);
}

}  // namespace frl
