// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "frl/cli/runner.hpp"
#include "support.hpp"

using namespace frl;

namespace {

int g_failures = 0;

void report(int n, bool ok, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.3g", v);
    return b;
}

std::vector<Family> families() {
    std::vector<Family> f;
    for (FamilyKind k : kAllFamilies) f.emplace_back(k);  // generalized Kropina with m = 2
    return f;
}

std::vector<double> origin(int n) { return std::vector<double>(n, 0.0); }

constexpr int kSweep = 200;
constexpr FlatnessKind kKinds[] = {FlatnessKind::projective, FlatnessKind::dual};

struct SweepStats {
    double gbar = 0, cartan = 0, cartan_y = 0;
    double inverse = 0, det = 0;
    int inverse_used = 0, inverse_skipped = 0;
    double euler = 0, homog = 0;
    int samples = 0;
};

// Criteria 1 to 4 over 6 families, n in {2, 3, 4}, 200 samples each.
SweepStats tensor_sweep() {
    SweepStats st;
    std::uint64_t seed = 1000;
    for (const Family& fam : families())
        for (int n : {2, 3, 4}) {
            std::mt19937_64 rng(seed++);
            for (int t = 0; t < kSweep; ++t) {
                const Sample S = sample_admissible(rng, fam, n);
                const BaseBundle B = base_bundle(S.a, S.b, S.y);
                const auto f = fbar_field(fam, S.a, S.b);
                const auto x = origin(n);
                ++st.samples;

                const SymMatrix gc = gbar(fam, B), go = hessian_half_square(f, x, S.y);
                st.gbar = std::max(st.gbar, max_abs_diff(gc, go) / (1.0 + go.max_abs()));
                const Sym3Tensor cc = cartan_bar(fam, B), co = third_deriv_quarter(f, x, S.y);
                st.cartan = std::max(st.cartan, max_abs_diff(cc, co) / (1.0 + co.max_abs()));
                st.cartan_y = std::max(st.cartan_y, cc.contract(S.y).max_abs());

                const MixingParams P = mixing_params(rho_coefficients(fam, B.F, B.beta), B);
                const double cond =
                    std::min({std::fabs(P.rho0), std::fabs(P.X), std::fabs(P.Y), std::fabs(P.final_scalar())});
                if (cond >= 1e-6) {
                    ++st.inverse_used;
                    st.inverse = std::max(st.inverse, identity_defect(inverse_from_params(P, B), gc));
                    st.det = std::max(st.det, determinant_relation(fam, B).rel_error);
                } else {
                    ++st.inverse_skipped;
                }

                const double Fb = fbar(fam, B.F, B.beta);
                st.euler = std::max(st.euler, std::fabs(gc.quad(S.y, S.y) - Fb * Fb) / (Fb * Fb));
                for (double lam : {0.5, 2.0, 7.0})
                    st.homog = std::max(st.homog, homogeneity_residual(f, x, S.y, lam) / (lam * Fb));
            }
        }
    return st;
}

void criterion5() {
    double worst = 0.0;
    std::string where;
    std::uint64_t seed = 5000;
    int count = 0;
    for (const Family& fam : families()) {
        std::mt19937_64 rng(seed++);
        for (int t = 0; t < 100; ++t) {
            const auto fs = frl::testing::random_polynomial_sample(rng, fam, 2 + t % 3, 2);
            const JetData J = jet_data(fs.a, fs.b, fs.x, fs.y);
            for (FlatnessKind kind : kKinds) {
                const double d = frl::testing::rel_delta(flatness_direct(kind, fam, fs.a, fs.b, fs.x, fs.y),
                                                    assembled(kind, fam, J));
                ++count;
                if (d > worst) {
                    worst = d;
                    where = fam.name() + " " + kind_name(kind);
                }
            }
        }
    }
    report(5, worst <= 1e-8,
           "direct vs assembled flatness residual, " + std::to_string(count) + " cases, max relative " + fmt(worst) +
               " (" + where + ") <= 1e-8");
}

void criterion6() {
    bool exact_zero = true, all_flat = true;
    double direct = 0.0;
    int count = 0;
    std::mt19937_64 rng(6000);
    std::uniform_real_distribution<double> ux(-1.0, 1.0);
    for (const Family& fam : families())
        for (int n : {2, 3, 4})
            for (int t = 0; t < 10; ++t) {
                const Sample S = sample_admissible(rng, fam, n);
                std::vector<double> x(n);
                for (double& v : x) v = ux(rng);
                const MetricField a = MetricField::constant(S.a);
                const OneFormField b = OneFormField::constant(S.b);
                for (FlatnessKind kind : kKinds) {
                    const auto R = evaluate_flatness(kind, fam, a, b, x, S.y);
                    ++count;
                    for (const auto& c : R.conditions) exact_zero = exact_zero && max_abs(c.value) == 0.0;
                    direct = std::max(direct, R.direct_max);
                    all_flat = all_flat && R.verdict == Verdict::flat;
                }
            }
    report(6, exact_zero && direct <= 1e-12 && all_flat,
           std::to_string(count) + " constant-field reports: conditions exactly 0 " + (exact_zero ? "yes" : "no") +
               ", max direct " + fmt(direct) + " <= 1e-12, all flat " + (all_flat ? "yes" : "no"));
}

void criterion7() {
    // a = I, b = (eps x^1, 0), x = (1, 0), y = (1, 1): A_0 = 0, beta_0 = eps, beta_l = (eps, 0),
    // beta_0l = beta_xl = (eps, 0).
    using Keys = std::set<std::string>;
    const std::map<std::pair<FamilyKind, FlatnessKind>, Keys> predicted{
        {{FamilyKind::Kropina, FlatnessKind::projective}, {"PF1.1", "PF1.2"}},
        {{FamilyKind::GeneralizedKropina, FlatnessKind::projective}, {"PF2.2", "PF2.6"}},
        {{FamilyKind::Square, FlatnessKind::projective}, {"PF3.2", "PF3.3"}},
        {{FamilyKind::Matsumoto, FlatnessKind::projective}, {"PF4.7", "PF4.8"}},
        {{FamilyKind::Exponential, FlatnessKind::projective}, {"PF5.6", "PF5.7"}},
        {{FamilyKind::InfiniteSeries, FlatnessKind::projective}, {"PF6.6", "PF6.7"}},
        {{FamilyKind::Kropina, FlatnessKind::dual}, {"LDF1.1", "LDF1.2"}},
        {{FamilyKind::GeneralizedKropina, FlatnessKind::dual}, {"LDF2.10", "LDF2.11", "LDF2.12"}},
        {{FamilyKind::Square, FlatnessKind::dual}, {"LDF3.9", "LDF3.4", "LDF3.11"}},
        {{FamilyKind::Matsumoto, FlatnessKind::dual}, {"LDF4.9", "LDF4.10", "LDF4.11", "LDF4.12"}},
        {{FamilyKind::Exponential, FlatnessKind::dual}, {"LDF5.10", "LDF5.1", "LDF5.8"}},
        {{FamilyKind::InfiniteSeries, FlatnessKind::dual}, {"LDF6.8", "LDF6.7", "LDF6.10"}},
    };
    const auto sc = frl::testing::linear_one_form_scenario(2, 0.1, {1.0, 0.0}, {1.0, 1.0});
    bool ok = true;
    std::string bad;
    for (const Family& fam : families())
        for (FlatnessKind kind : kKinds) {
            const auto R = evaluate_flatness(kind, fam, sc.a, sc.b, sc.x, sc.y);
            const auto f = R.firing();
            const Keys got(f.begin(), f.end());
            const bool match = got == predicted.at({fam.kind(), kind}) && R.verdict == Verdict::not_flat;
            if (!match) {
                ok = false;
                bad += " " + fam.name() + "/" + kind_name(kind);
            }
        }
    report(7, ok, ok ? "b = (0.1 x^1, 0): 12 reports not-flat with the predicted firing keys"
                     : "mismatched firing keys or verdict:" + bad);
}

void criterion8() {
    std::mt19937_64 rng(8000);
    const Family kr(FamilyKind::Kropina), gk = Family::generalized_kropina(1.0);
    double tens = 0.0;
    bool reports_equal = true;
    for (int n : {2, 3, 4})
        for (int t = 0; t < 50; ++t) {
            const Sample S = sample_admissible(rng, kr, n);
            const BaseBundle B = base_bundle(S.a, S.b, S.y);
            const SymMatrix g1 = gbar(kr, B), g2 = gbar(gk, B);
            const Sym3Tensor c1 = cartan_bar(kr, B), c2 = cartan_bar(gk, B);
            tens = std::max(tens, max_abs_diff(g1, g2) / (1.0 + g1.max_abs()));
            tens = std::max(tens, max_abs_diff(c1, c2) / (1.0 + c1.max_abs()));
        }
    for (int t = 0; t < 30; ++t) {
        const auto fs = frl::testing::random_polynomial_sample(rng, kr, 2 + t % 3);
        const JetData J = jet_data(fs.a, fs.b, fs.x, fs.y);
        for (FlatnessKind kind : kKinds) {
            const auto a = conditions(kind, kr, J), b = conditions(kind, gk, J);
            reports_equal = reports_equal && a.size() == b.size();
            for (std::size_t i = 0; reports_equal && i < a.size(); ++i)
                reports_equal = a[i].key == b[i].key && a[i].value == b[i].value;
        }
    }
    double base = 0.0;
    for (FamilyKind k : {FamilyKind::Square, FamilyKind::Exponential})
        for (int n : {2, 3, 4})
            for (int t = 0; t < 20; ++t) {
                const SymMatrix a = random_metric(rng, n);
                Covector y = Covector(n);
                std::normal_distribution<double> nd;
                for (double& v : y) v = nd(rng);
                const BaseBundle B = base_bundle(a, Covector(n, 0.0), y);
                base = std::max(base, max_abs_diff(gbar(Family(k), B), a));
                base = std::max(base, cartan_bar(Family(k), B).max_abs());
            }
    report(8, tens <= 1e-12 && reports_equal && base <= 1e-12,
           "m = 1 vs Kropina tensors max relative " + fmt(tens) + " <= 1e-12, condition reports identical " +
               (reports_equal ? "yes" : "no") + "; b = 0 square/exponential max |gbar - a|, |Cbar| " + fmt(base) +
               " <= 1e-12");
}

void criterion9() {
    const char* text = R"({
      "n": 3,
      "family": {"name": "generalized-kropina", "m": 2},
      "metric": [[[{"exponents": [0, 0, 0], "coeff": 1.2}, {"exponents": [1, 0, 0], "coeff": 0.1}], 0.1, 0],
                 [0.1, 1, 0], [0, 0, [{"exponents": [0, 0, 0], "coeff": 1}, {"exponents": [0, 1, 1], "coeff": 0.05}]]],
      "one_form": [[{"exponents": [0, 0, 0], "coeff": 0.3}, {"exponents": [0, 0, 1], "coeff": 0.1}], 0.2, 0.1],
      "samples": {"random": {"count": 16, "seed": 909, "x_box": 0.5}},
      "minkowski": {"b": 0.5, "s": [0.2, 0.3, 0.5]}
    })";
    const cli::Scenario S = cli::parse_scenario_text(text);
    cli::RunOptions one, many;
    one.threads = 1;
    many.threads = 4;
    const std::string a = cli::dump(cli::run(cli::Command::all, S, one).report);
    const std::string b = cli::dump(cli::run(cli::Command::all, S, one).report);
    const std::string c = cli::dump(cli::run(cli::Command::all, S, many).report);
    report(9, a == b && a == c,
           "seeded 'all' report rerun byte-identical " + std::string(a == b ? "yes" : "no") +
               ", across thread counts " + (a == c ? "yes" : "no") + " (" + std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const SweepStats st = tensor_sweep();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const std::string sweep = std::to_string(st.samples) + " samples";

    report(1, st.gbar <= 1e-8,
           "gbar vs Hessian oracle, " + sweep + ", max relative " + fmt(st.gbar) + " <= 1e-8 (sweep " + fmt(secs) + " s)");
    report(2, st.cartan <= 1e-7 && st.cartan_y <= 1e-9,
           "Cbar vs third-derivative oracle, max relative " + fmt(st.cartan) + " <= 1e-7; max |Cbar y| " +
               fmt(st.cartan_y) + " <= 1e-9");
    report(3, st.inverse <= 1e-8 && st.det <= 1e-8 && st.inverse_used > 0,
           "inverse identity on " + std::to_string(st.inverse_used) + " samples (" +
               std::to_string(st.inverse_skipped) + " ill-conditioned skipped), max |G g - I| " + fmt(st.inverse) +
               " <= 1e-8, determinant relation " + fmt(st.det) + " <= 1e-8");
    report(4, st.euler <= 1e-10 && st.homog <= 1e-12,
           "Euler gbar(y, y) = Fbar^2 max relative " + fmt(st.euler) + " <= 1e-10; homogeneity max relative " +
               fmt(st.homog) + " <= 1e-12");
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::printf("%s: %d of 9 criteria failed\n", g_failures ? "FAIL" : "PASS", g_failures);
    return g_failures ? 1 : 0;
}
