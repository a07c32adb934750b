#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "support.hpp"

using namespace frl;

namespace {

std::vector<Family> all_families() {
    std::vector<Family> f;
    for (FamilyKind k : kAllFamilies) f.emplace_back(k);
    return f;
}

constexpr FlatnessKind kKinds[] = {FlatnessKind::projective, FlatnessKind::dual};

const ConditionResidual& find(const std::vector<ConditionResidual>& cs, const std::string& key) {
    for (const auto& c : cs)
        if (c.key == key) return c;
    throw std::runtime_error("missing key " + key);
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

// a = diag(1 + c x^1, 1)
MetricField diag_metric_linear(double c) {
    Polynomial p = Polynomial::constant(2, 1.0);
    p.add_term({1, 0}, c);
    return MetricField(2, {{FieldEntry(p), FieldEntry::constant(2, 0.0)},
                           {FieldEntry::constant(2, 0.0), FieldEntry::constant(2, 1.0)}});
}

// An admissible constant sample of the family, as fields.
frl::testing::FieldSample constant_sample(std::mt19937_64& rng, const Family& fam, int n) {
    const Sample S = sample_admissible(rng, fam, n);
    return {MetricField::constant(S.a), OneFormField::constant(S.b), std::vector<double>(n, 0.3), S.y};
}

}  // namespace

TEST(Conditions, ConstantFieldsGiveExactZeros) {
    std::mt19937_64 rng(51);
    std::vector<Family> fams = all_families();
    fams.push_back(Family::generalized_kropina(1.0));
    for (const Family& fam : fams)
        for (FlatnessKind kind : kKinds) {
            const auto fs = constant_sample(rng, fam, 3);
            const auto R = evaluate_flatness(kind, fam, fs.a, fs.b, fs.x, fs.y);
            for (const auto& c : R.conditions) EXPECT_EQ(max_abs(c.value), 0.0) << fam.name() << " " << c.key;
            EXPECT_EQ(R.direct_max, 0.0);
            EXPECT_EQ(max_abs(R.assembled), 0.0);
            EXPECT_EQ(R.verdict, Verdict::flat);
            EXPECT_TRUE(R.firing().empty());
        }
}

TEST(Conditions, KeysPerFamily) {
    const JetData J = jet_data(MetricField::euclidean(2), OneFormField::constant({0.1, 0.0}), {0.0, 0.0}, {1.0, 1.0});
    auto keys = [&](FlatnessKind k, const Family& f) {
        std::vector<std::string> r;
        for (const auto& c : conditions(k, f, J)) r.push_back(c.key);
        return r;
    };
    using V = std::vector<std::string>;
    EXPECT_EQ(keys(FlatnessKind::projective, Family(FamilyKind::Kropina)), (V{"PF1.1", "PF1.2"}));
    EXPECT_EQ(keys(FlatnessKind::projective, Family::generalized_kropina(2.0)), (V{"PF2.2", "PF2.4", "PF2.5", "PF2.6"}));
    EXPECT_EQ(keys(FlatnessKind::projective, Family(FamilyKind::Square)), (V{"PF3.1", "PF3.2", "PF3.3", "PF3.4"}));
    EXPECT_EQ(keys(FlatnessKind::projective, Family(FamilyKind::Exponential)),
              (V{"PF5.5", "PF5.3", "PF5.6", "PF5.1", "PF5.7"}));
    EXPECT_EQ(keys(FlatnessKind::dual, Family(FamilyKind::Kropina)), (V{"LDF1.1", "LDF1.2", "LDF1.3"}));
    EXPECT_EQ(keys(FlatnessKind::dual, Family(FamilyKind::Matsumoto)),
              (V{"LDF4.7", "LDF4.8", "LDF4.9", "LDF4.10", "LDF4.11", "LDF4.12"}));
    EXPECT_EQ(keys(FlatnessKind::dual, Family::generalized_kropina(1.0)), keys(FlatnessKind::dual, Family(FamilyKind::Kropina)));
}

TEST(Conditions, KropinaLinearOneForm) {
    // a = I, b = (eps x^1, 0), x = (1, 0), y = (1, 1)
    const double eps = 0.1;
    const auto sc = frl::testing::linear_one_form_scenario(2, eps, {1.0, 0.0}, {1.0, 1.0});
    const auto cs = projective_conditions(Family(FamilyKind::Kropina), jet_data(sc.a, sc.b, sc.x, sc.y));
    const Covector v = find(cs, "PF1.1").value;
    EXPECT_NEAR(v[0], 2.0 * eps * eps, 1e-17);
    EXPECT_EQ(v[1], 0.0);
}

TEST(Conditions, MatsumotoConstantMetricFiresOnlyBetaConditions) {
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {1.0, 0.0}, {1.0, 1.0});
    const auto R = evaluate_flatness(FlatnessKind::projective, Family(FamilyKind::Matsumoto), sc.a, sc.b, sc.x, sc.y);
    EXPECT_EQ(as_set(R.firing()), (std::set<std::string>{"PF4.7", "PF4.8"}));
    EXPECT_EQ(R.verdict, Verdict::not_flat);
}

TEST(Conditions, MatsumotoLinearMetricFiresQuadraticCondition) {
    const MetricField a = diag_metric_linear(1.0);
    const OneFormField b = OneFormField::constant({0.1, 0.0});
    const auto R = evaluate_flatness(FlatnessKind::projective, Family(FamilyKind::Matsumoto), a, b, {0.0, 0.0}, {1.0, 1.0});
    // A_0 = 1, A_l = (2, 2)
    EXPECT_EQ(find(R.conditions, "PF4.5").value, (Covector{2.0, 2.0}));
    EXPECT_EQ(max_abs(find(R.conditions, "PF4.7").value), 0.0);
    const auto fires = as_set(R.firing());
    EXPECT_TRUE(fires.count("PF4.5"));
    EXPECT_FALSE(fires.count("PF4.7"));
    EXPECT_FALSE(fires.count("PF4.1"));
    EXPECT_EQ(R.verdict, Verdict::not_flat);
}

TEST(Conditions, DualLinearOneForm) {
    // beta_0l - 2 beta_xl = (-eps, 0) while the projective difference vanishes
    const double eps = 0.1;
    const auto sc = frl::testing::linear_one_form_scenario(2, eps, {1.0, 0.0}, {1.0, 1.0});
    const JetData J = jet_data(sc.a, sc.b, sc.x, sc.y);
    const Covector d = find(dual_conditions(Family::generalized_kropina(2.0), J), "LDF2.11").value;
    EXPECT_NEAR(d[0], -eps, 1e-17);
    EXPECT_EQ(d[1], 0.0);
    EXPECT_EQ(max_abs(find(projective_conditions(Family::generalized_kropina(2.0), J), "PF2.4").value), 0.0);
}

TEST(Direct, XIndependentFieldsVanish) {
    std::mt19937_64 rng(52);
    for (const Family& fam : all_families())
        for (FlatnessKind kind : kKinds) {
            const auto fs = constant_sample(rng, fam, 3);
            EXPECT_LE(max_abs(flatness_direct(kind, fam, fs.a, fs.b, fs.x, fs.y)), 1e-12);
            EXPECT_EQ(projective_factor(fs.a, fs.b, fam, fs.x, fs.y), 0.0);
        }
}

TEST(Direct, DomainErrors) {
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {0.0, 0.0}, {1.0, 1.0});
    EXPECT_THROW(projective_direct(Family(FamilyKind::Kropina), sc.a, sc.b, sc.x, sc.y), DomainError);
    EXPECT_THROW(evaluate_flatness(FlatnessKind::dual, Family(FamilyKind::Kropina), sc.a, sc.b, sc.x, sc.y),
                 DomainError);
}

TEST(Assembly, CorrectedBracketsMatchDirectResidual) {
    std::mt19937_64 rng(53);
    std::vector<Family> fams = all_families();
    fams.push_back(Family::generalized_kropina(1.0));
    fams.push_back(Family::generalized_kropina(3.0));
    fams.push_back(Family::generalized_kropina(-2.0));
    for (const Family& fam : fams)
        for (FlatnessKind kind : kKinds) {
            double worst = 0.0;
            for (int t = 0; t < 40; ++t) {
                const auto fs = frl::testing::random_polynomial_sample(rng, fam, 2 + t % 3);
                const Covector d = flatness_direct(kind, fam, fs.a, fs.b, fs.x, fs.y);
                const Covector a = assembled(kind, fam, jet_data(fs.a, fs.b, fs.x, fs.y));
                worst = std::max(worst, frl::testing::rel_delta(d, a));
            }
            EXPECT_LE(worst, 1e-8) << fam.name() << " m=" << fam.m() << " " << kind_name(kind);
        }
}

TEST(Assembly, PrintedBracketsDifferExactlyWhereCorrected) {
    EXPECT_EQ(assembly_corrections().size(), 5u);
    std::mt19937_64 rng(54);
    for (const Family& fam : all_families())
        for (FlatnessKind kind : kKinds) {
            double worst = 0.0;
            for (int t = 0; t < 20; ++t) {
                const auto fs = frl::testing::random_polynomial_sample(rng, fam, 3);
                const JetData J = jet_data(fs.a, fs.b, fs.x, fs.y);
                worst = std::max(worst, frl::testing::rel_delta(assembled(kind, fam, J, BracketForm::corrected),
                                                           assembled(kind, fam, J, BracketForm::printed)));
            }
            if (bracket_differs_when_printed(fam.kind(), kind))
                EXPECT_GT(worst, 1e-4) << fam.name() << " " << kind_name(kind);
            else
                EXPECT_EQ(worst, 0.0) << fam.name() << " " << kind_name(kind);
        }
}

TEST(Assembly, KropinaDualPrintedSignDiscrepancy) {
    // printed - corrected = (8 A / beta^3) A_l beta_0
    std::mt19937_64 rng(55);
    const Family fam(FamilyKind::Kropina);
    for (int t = 0; t < 20; ++t) {
        const auto fs = frl::testing::random_polynomial_sample(rng, fam, 2 + t % 3);
        const JetData J = jet_data(fs.a, fs.b, fs.x, fs.y);
        const Covector p = dual_assembled(fam, J, BracketForm::printed);
        const Covector c = dual_assembled(fam, J, BracketForm::corrected);
        Covector diff(p.size()), expect(p.size());
        for (std::size_t l = 0; l < p.size(); ++l) {
            diff[l] = p[l] - c[l];
            expect[l] = 8.0 * J.A / (J.beta * J.beta * J.beta) * J.A_l[l] * J.beta_0;
        }
        EXPECT_LE(frl::testing::rel_delta(diff, expect), 1e-9);
    }
}

TEST(Assembly, UnitExponentMatchesKropinaReport) {
    std::mt19937_64 rng(56);
    const Family kr(FamilyKind::Kropina), gk = Family::generalized_kropina(1.0);
    for (FlatnessKind kind : kKinds)
        for (int t = 0; t < 10; ++t) {
            const auto fs = frl::testing::random_polynomial_sample(rng, kr, 3);
            const auto a = evaluate_flatness(kind, kr, fs.a, fs.b, fs.x, fs.y);
            const auto b = evaluate_flatness(kind, gk, fs.a, fs.b, fs.x, fs.y);
            ASSERT_EQ(a.conditions.size(), b.conditions.size());
            for (std::size_t i = 0; i < a.conditions.size(); ++i) {
                EXPECT_EQ(a.conditions[i].key, b.conditions[i].key);
                EXPECT_EQ(a.conditions[i].value, b.conditions[i].value);
            }
            EXPECT_LE(frl::testing::rel_delta(a.assembled, b.assembled), 1e-12);
            EXPECT_LE(frl::testing::rel_delta(a.direct, b.direct), 1e-12);
            EXPECT_EQ(a.verdict, b.verdict);
        }
}

TEST(ProjectiveFactor, HomogeneousOfDegreeOne) {
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {1.0, 0.5}, {1.0, 0.7});
    const Family fam(FamilyKind::Kropina);
    const double p1 = projective_factor(sc.a, sc.b, fam, sc.x, sc.y);
    const double p2 = projective_factor(sc.a, sc.b, fam, sc.x, {2.0, 1.4});
    EXPECT_NE(p1, 0.0);
    EXPECT_NEAR(p2, 2.0 * p1, 1e-14);
}

TEST(ProjectiveFactor, MatchesFiniteDifference) {
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {1.0, 0.5}, {1.0, 0.7});
    const Family fam(FamilyKind::Kropina);
    const auto f = fbar_field(fam, sc.a, sc.b);
    auto along = [&](double t) {
        std::vector<double> x = sc.x;
        for (int k = 0; k < 2; ++k) x[k] += t * sc.y[k];
        return f(std::span<const double>(x), std::span<const double>(sc.y));
    };
    const double h = 1e-5;
    const double Fb = along(0.0);
    const double fd = (along(h) - along(-h)) / (2.0 * h) / (2.0 * Fb);
    EXPECT_NEAR(projective_factor(sc.a, sc.b, fam, sc.x, sc.y), fd, 1e-7);
}

TEST(Verdict, Judge) {
    std::vector<ConditionResidual> ok{{"k", "", {0.0, 1e-12}}}, bad{{"k", "", {0.0, 1e-3}}};
    EXPECT_EQ(judge(ok, 1e-10, 1e-10, 1e-9), Verdict::flat);
    EXPECT_EQ(judge(ok, 2e-8, 1e-10, 1e-9), Verdict::not_flat);
    EXPECT_EQ(judge(ok, 5e-9, 1e-10, 1e-9), Verdict::inconclusive);
    EXPECT_EQ(judge(bad, 0.0, 1e-10, 1e-9), Verdict::inconclusive);
    EXPECT_EQ(verdict_name(Verdict::not_flat), "not-flat");
}

TEST(Verdict, ToleranceOverridesAndDefaults) {
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {1.0, 0.0}, {1.0, 1.0});
    const Family fam(FamilyKind::Square);
    const auto R = evaluate_flatness(FlatnessKind::dual, fam, sc.a, sc.b, sc.x, sc.y);
    EXPECT_EQ(R.tol_direct, 1e-9);
    EXPECT_NEAR(R.tol_cond, 1e-10 * (1.0 + 4.0 + 0.01), 1e-24);
    ToleranceOverrides o;
    o.tol_direct = 1.0;
    o.tol_cond = 1.0;
    const auto Q = evaluate_flatness(FlatnessKind::dual, fam, sc.a, sc.b, sc.x, sc.y, o);
    EXPECT_EQ(Q.tol_direct, 1.0);
    EXPECT_TRUE(Q.firing().empty());
    EXPECT_EQ(Q.verdict, Verdict::flat);
}

TEST(Verdict, InvariantUnderScalingY) {
    std::mt19937_64 rng(57);
    for (const Family& fam : all_families())
        for (FlatnessKind kind : kKinds)
            for (int t = 0; t < 5; ++t) {
                const auto fs = frl::testing::random_polynomial_sample(rng, fam, 2);
                std::vector<double> y2 = fs.y;
                for (double& v : y2) v *= 2.0;
                const auto a = evaluate_flatness(kind, fam, fs.a, fs.b, fs.x, fs.y);
                const auto b = evaluate_flatness(kind, fam, fs.a, fs.b, fs.x, y2);
                EXPECT_EQ(a.verdict, b.verdict) << fam.name();
            }
}

TEST(Sufficiency, ConditionsHoldingImplyVanishingResidual) {
    // b = grad(x^1 x^2) = (x^2, x^1) with a = I and y = (1, 0): A_0 = 0, beta_0 = 2 y^1 y^2 = 0
    // and beta_0l = beta_xl = (0, 1), so every projective condition of these families holds.
    Polynomial p1(2), p2(2);
    p1.add_term({0, 1}, 1.0);
    p2.add_term({1, 0}, 1.0);
    const OneFormField b(2, {FieldEntry(p1), FieldEntry(p2)});
    const MetricField a = MetricField::euclidean(2);
    for (FamilyKind k : {FamilyKind::Square, FamilyKind::Matsumoto, FamilyKind::Exponential}) {
        const Family fam(k);
        const auto R = evaluate_flatness(FlatnessKind::projective, fam, a, b, {0.5, 0.2}, {1.0, 0.0});
        for (const auto& c : R.conditions) EXPECT_LE(max_abs(c.value), 1e-15) << fam.name() << " " << c.key;
        EXPECT_GT(max_abs(jet_data(a, b, {0.5, 0.2}, {1.0, 0.0}).beta_xl), 0.5);
        EXPECT_LE(R.direct_max, 1e-12) << fam.name();
        EXPECT_EQ(R.verdict, Verdict::flat);
    }
}

TEST(FiniteDifferencePath, CallableFieldsUseLooserTolerance) {
    std::vector<std::vector<FieldEntry>> rows(2, std::vector<FieldEntry>(2, FieldEntry::constant(2, 0.0)));
    rows[0][0] = FieldEntry::callable(2, [](std::span<const double> x) { return 1.0 + 0.2 * std::sin(x[0]); });
    rows[1][1] = FieldEntry::constant(2, 1.0);
    const MetricField a(2, rows);
    const OneFormField b(2, {FieldEntry::callable(2, [](std::span<const double> x) { return 0.1 + 0.05 * std::cos(x[1]); }),
                             FieldEntry::constant(2, 0.05)});
    for (const Family& fam : {Family(FamilyKind::Square), Family(FamilyKind::Matsumoto)})
        for (FlatnessKind kind : kKinds) {
            const auto R = evaluate_flatness(kind, fam, a, b, {0.3, 0.4}, {1.0, 0.5});
            EXPECT_EQ(R.tol_direct, 1e-6);
            EXPECT_LE(R.assembly_delta, 1e-5) << fam.name();
            EXPECT_EQ(R.verdict, Verdict::not_flat);
        }
}
