#pragma once

/**
 * @file report.hpp
 * @brief Condition residuals, direct residual and assembled residual side by side, with a verdict.
 *
 * flat          every condition <= tol_cond and direct <= tol_direct
 * not-flat      direct > 10 tol_direct
 * inconclusive  anything else
 */

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "frl/base/bundle.hpp"
#include "frl/base/fields.hpp"
#include "frl/flatness/assembly.hpp"
#include "frl/flatness/conditions.hpp"
#include "frl/flatness/direct.hpp"
#include "frl/randers/family.hpp"

namespace frl {

enum class Verdict { flat, not_flat, inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::flat: return "flat";
        case Verdict::not_flat: return "not-flat";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ToleranceOverrides {
    std::optional<double> tol_cond;
    std::optional<double> tol_direct;
};

struct ConditionReport {
    Family family;
    FlatnessKind kind = FlatnessKind::projective;
    std::vector<ConditionResidual> conditions;
    Covector direct;
    double direct_max = 0.0;
    Covector assembled;
    double assembly_delta = 0.0;  ///< max |direct - assembled| / max(1, max |direct|)
    double tol_cond = 0.0;
    double tol_direct = 0.0;
    Verdict verdict = Verdict::inconclusive;

    /// Keys whose residual exceeds tol_cond.
    std::vector<std::string> firing() const {
        std::vector<std::string> k;
        for (const auto& c : conditions)
            if (max_abs(c.value) > tol_cond) k.push_back(c.key);
        return k;
    }
};

/// 1e-10 (1 + A^2 + beta^2)
inline double default_tol_cond(const JetData& J) { return 1e-10 * (1.0 + J.A * J.A + J.beta * J.beta); }

/// 1e-9 with exact x-derivatives, 1e-6 with finite differences.
inline double default_tol_direct(XMode mode) { return mode == XMode::exact ? 1e-9 : 1e-6; }

inline Verdict judge(const std::vector<ConditionResidual>& conds, double direct_max, double tol_cond, double tol_direct) {
    if (direct_max > 10.0 * tol_direct) return Verdict::not_flat;
    const bool conds_ok =
        std::all_of(conds.begin(), conds.end(), [&](const ConditionResidual& c) { return max_abs(c.value) <= tol_cond; });
    if (conds_ok && direct_max <= tol_direct) return Verdict::flat;
    return Verdict::inconclusive;
}

/**
 * @brief Full flatness report at (x, y).
 * @throws DomainError when the family is undefined at the point.
 */
inline ConditionReport evaluate_flatness(FlatnessKind kind, const Family& fam, const MetricField& a,
                                         const OneFormField& b, const std::vector<double>& x,
                                         const std::vector<double>& y, const ToleranceOverrides& tol = {}) {
    ConditionReport R;
    R.family = fam;
    R.kind = kind;
    const JetData J = jet_data(a, b, x, y);
    R.conditions = conditions(kind, fam, J);
    R.direct = flatness_direct(kind, fam, a, b, x, y);
    R.direct_max = max_abs(R.direct);
    R.assembled = assembled(kind, fam, J);
    double d = 0.0;
    for (std::size_t i = 0; i < R.direct.size(); ++i) d = std::max(d, std::fabs(R.direct[i] - R.assembled[i]));
    R.assembly_delta = d / std::max(1.0, R.direct_max);
    R.tol_cond = tol.tol_cond.value_or(default_tol_cond(J));
    R.tol_direct = tol.tol_direct.value_or(default_tol_direct(x_mode(a, b)));
    R.verdict = judge(R.conditions, R.direct_max, R.tol_cond, R.tol_direct);
    return R;
}

}  // namespace frl
