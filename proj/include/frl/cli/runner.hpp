#pragma once

/**
 * @file runner.hpp
 * @brief Command dispatch and report assembly for the frl tool.
 *
 * Exit codes: 0 every check passed, 1 a check failed or a sample hit a domain error,
 * 2 input error. A not-flat or inconclusive verdict is a finding, not a failed check.
 */

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "frl/cli/json_io.hpp"
#include "frl/cli/scenario.hpp"
#include "frl/flatness/report.hpp"
#include "frl/inverse/inverse_metric.hpp"
#include "frl/randers/closed_forms.hpp"
#include "frl/randers/scalar_fields.hpp"
#include "frl/tensor/derivatives.hpp"

namespace frl::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { tensors, inverse_check, flatness, minkowski_check, all };

inline std::string command_name(Command c) {
    switch (c) {
        case Command::tensors: return "tensors";
        case Command::inverse_check: return "inverse-check";
        case Command::flatness: return "flatness";
        case Command::minkowski_check: return "minkowski-check";
        case Command::all: return "all";
    }
    return "?";
}

struct RunOptions {
    bool projective = true;
    bool dual = true;
    bool stamp = false;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_cond, tol_direct;
    int threads = 0;  ///< 0: FRL_THREADS or hardware concurrency
};

struct RunResult {
    json report;
    int exit_code = 0;
};

/// Tolerances of the oracle and identity checks.
namespace tol {
inline constexpr double gbar_oracle = 1e-8;
inline constexpr double cartan_oracle = 1e-7;
inline constexpr double cartan_contraction = 1e-9;
inline constexpr double gradient_oracle = 1e-10;
inline constexpr double euler = 1e-10;
inline constexpr double homogeneity = 1e-12;
inline constexpr double inverse_identity = 1e-8;
inline constexpr double determinant = 1e-8;
inline constexpr double bij = 1e-9;
inline constexpr double assembly_exact = 1e-8;
inline constexpr double assembly_fd = 1e-5;
inline constexpr double conditioning = 1e-6;
inline constexpr double sufficiency_cond = 1e-12;
}  // namespace tol

namespace detail {

inline json check(const std::string& name, double delta, double tolerance) {
    return json{{"name", name}, {"delta", delta}, {"tol", tolerance}, {"pass", std::isfinite(delta) && delta <= tolerance}};
}

inline double rel(double diff, double scale) { return diff / (1.0 + scale); }

inline json tensors_block(const Scenario& S, const PointSample& p) {
    const Family& fam = S.family;
    const BaseBundle B = base_bundle(S.metric, S.one_form, p.x, p.y);
    const double fb = fbar(fam, B.F, B.beta);
    const auto f = fbar_field(fam, S.metric, S.one_form);
    const SymMatrix gc = gbar(fam, B);
    const SymMatrix go = hessian_half_square(f, p.x, p.y);
    const Sym3Tensor cc = cartan_bar(fam, B);
    const Sym3Tensor co = third_deriv_quarter(f, p.x, p.y);
    const Covector grad = fbar_y_gradient(fam, B);
    const Covector grad_o = y_gradient(f, p.x, p.y);

    json checks = json::array();
    checks.push_back(check("gbar_oracle", rel(max_abs_diff(gc, go), gc.max_abs()), tol::gbar_oracle));
    checks.push_back(check("cartan_oracle", rel(max_abs_diff(cc, co), cc.max_abs()), tol::cartan_oracle));
    checks.push_back(check("cartan_y_contraction", rel(cc.contract(p.y).max_abs(), cc.max_abs()), tol::cartan_contraction));
    double gd = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i) gd = std::max(gd, std::fabs(grad[i] - grad_o[i]));
    checks.push_back(check("gradient_oracle", rel(gd, max_abs(grad)), tol::gradient_oracle));
    checks.push_back(check("euler_gbar", std::fabs(gc.quad(p.y, p.y) - fb * fb) / (fb * fb), tol::euler));
    for (double lam : {0.5, 2.0, 7.0}) {
        const double h = homogeneity_residual(f, p.x, p.y, lam);
        char name[48];
        std::snprintf(name, sizeof name, "homogeneity_lambda_%g", lam);
        checks.push_back(check(name, h / (lam * std::fabs(fb)), tol::homogeneity));
    }
    json j;
    j["F"] = B.F;
    j["beta"] = B.beta;
    j["fbar"] = fb;
    j["fbar_y"] = to_json(grad);
    j["gbar"] = to_json(gc);
    j["gbar_positive_definite"] = pd_check(gc).ok;
    j["cartan"] = to_json(cc);
    j["checks"] = checks;
    return j;
}

inline json inverse_block(const Scenario& S, const PointSample& p) {
    const Family& fam = S.family;
    const BaseBundle B = base_bundle(S.metric, S.one_form, p.x, p.y);
    const Rho rho = rho_coefficients(fam, B.F, B.beta);
    const MixingParams P = mixing_params(rho, B);
    json j;
    j["rho"] = {rho.r0, rho.r1, rho.r2, rho.r3};
    j["mixing"] = {{"lambda", P.lambda}, {"mu", P.mu},   {"nu", P.nu}, {"c2", P.c2},          {"X", P.X},
                   {"d2", P.d2},         {"Y", P.Y},     {"btilde2", P.btilde2}, {"one_plus_nu_btilde2", P.final_scalar()}};
    const double conditioning = std::min({std::fabs(P.rho0), std::fabs(P.X), std::fabs(P.Y), std::fabs(P.final_scalar())});
    j["conditioning"] = conditioning;
    const SymMatrix gc = gbar(fam, B);
    const SymMatrix gi = inverse_from_params(P, B);
    j["gbar_inverse"] = to_json(gi);
    json checks = json::array();
    if (conditioning >= tol::conditioning) {
        checks.push_back(check("inverse_identity", identity_defect(gi, gc), tol::inverse_identity));
        checks.push_back(check("determinant_relation", determinant_relation(fam, B).rel_error, tol::determinant));
        const Covector d = cascade_d(P, B);
        checks.push_back(check("bij_expansion", rel(bij_discrepancy(P, B), max_abs(d) * max_abs(d)), tol::bij));
    } else {
        j["skipped"] = "a cascade scalar is below 1e-6 in magnitude";
    }
    j["checks"] = checks;
    return j;
}

inline json flatness_block(const Scenario& S, const PointSample& p, FlatnessKind kind, const ToleranceOverrides& t) {
    const ConditionReport R = evaluate_flatness(kind, S.family, S.metric, S.one_form, p.x, p.y, t);
    json conds = json::array();
    bool all_tiny = true;
    for (const auto& c : R.conditions) {
        const double m = max_abs(c.value);
        all_tiny = all_tiny && m <= tol::sufficiency_cond;
        conds.push_back(json{{"key", c.key},
                             {"expression", c.expression},
                             {"residual", to_json(c.value)},
                             {"max_abs", m},
                             {"holds", m <= R.tol_cond}});
    }
    json checks = json::array();
    const bool exact = x_mode(S.metric, S.one_form) == XMode::exact;
    checks.push_back(check("assembly_identity", R.assembly_delta, exact ? tol::assembly_exact : tol::assembly_fd));
    if (all_tiny) checks.push_back(check("sufficiency", R.direct_max, R.tol_direct));
    json j;
    j["kind"] = kind_name(kind);
    j["verdict"] = verdict_name(R.verdict);
    j["tol_cond"] = R.tol_cond;
    j["tol_direct"] = R.tol_direct;
    j["conditions"] = conds;
    j["firing"] = R.firing();
    j["direct"] = to_json(R.direct);
    j["direct_max"] = R.direct_max;
    j["assembled"] = to_json(R.assembled);
    j["projective_factor"] = projective_factor(S.metric, S.one_form, S.family, p.x, p.y);
    j["checks"] = checks;
    return j;
}

inline json minkowski_block(const Scenario& S) {
    if (!S.minkowski) throw InputError("$.minkowski: required for minkowski-check");
    const MinkowskiSpec& M = *S.minkowski;
    const PhiSpec phi = minkowski_phi(S);
    const std::vector<double> grid = M.grid ? uniform_grid(M.b, *M.grid) : M.s;
    const MinkowskiReport R = minkowski_check(phi, M.b, grid);
    json pts = json::array();
    for (const auto& q : R.points)
        pts.push_back(json{{"s", q.s}, {"values", {q.c1, q.c2, q.c3}}, {"holds", {q.ok1, q.ok2, q.ok3}}});
    json j;
    j["phi"] = phi.name;
    j["b"] = M.b;
    j["b0"] = phi.b0;
    j["min"] = {R.min1, R.min2, R.min3};
    j["points"] = pts;
    j["all_hold"] = R.all_ok();
    j["checks"] = json::array({json{{"name", "minkowski_conditions"}, {"pass", R.all_ok()}}});
    return j;
}

inline int thread_count(int requested, std::size_t jobs) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("FRL_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || v < 1) throw InputError("FRL_THREADS must be a positive integer");
            t = static_cast<int>(std::min<long>(v, 1024));
        } else {
            t = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
        }
    }
    return std::max(1, std::min<int>(t, static_cast<int>(jobs)));
}

/// Evaluate job(i) for i in [0, count) on a pool; results land at their index.
inline std::vector<json> parallel_map(std::size_t count, int threads, const std::function<json(std::size_t)>& job) {
    std::vector<json> out(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) out[i] = job(i);
    };
    const int t = thread_count(threads, count);
    if (t <= 1) {
        worker();
        return out;
    }
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return out;
}

inline std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline void count_checks(const json& j, int& total, int& failed) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key() == "checks" && it.value().is_array()) {
                for (const auto& c : it.value()) {
                    ++total;
                    if (!c.value("pass", false)) ++failed;
                }
            } else {
                count_checks(it.value(), total, failed);
            }
        }
    } else if (j.is_array()) {
        for (const auto& e : j) count_checks(e, total, failed);
    }
}

}  // namespace detail

/**
 * @brief Run one command over a parsed scenario.
 * @throws InputError for input problems (exit code 2 at the tool level).
 */
inline RunResult run(Command cmd, Scenario S, const RunOptions& opt) {
    if (opt.seed) {
        if (!S.random) throw InputError("--seed needs a scenario with random samples");
        S.random->seed = *opt.seed;
    }
    if (opt.tol_cond) S.tolerances.tol_cond = opt.tol_cond;
    if (opt.tol_direct) S.tolerances.tol_direct = opt.tol_direct;
    if (cmd == Command::flatness && !opt.projective && !opt.dual) throw InputError("flatness needs --projective and/or --dual");

    const bool needs_samples = cmd != Command::minkowski_check;
    std::vector<PointSample> pts;
    if (needs_samples) {
        if (!S.random && S.points.empty()) throw InputError("$.samples: required for " + command_name(cmd));
        pts = generate_samples(S);
    }

    json minkowski;
    if (cmd == Command::minkowski_check || (cmd == Command::all && S.minkowski)) minkowski = detail::minkowski_block(S);

    const bool do_t = cmd == Command::tensors || cmd == Command::all;
    const bool do_i = cmd == Command::inverse_check || cmd == Command::all;
    const bool do_f = cmd == Command::flatness || cmd == Command::all;
    const bool do_p = do_f && (cmd == Command::all || opt.projective);
    const bool do_d = do_f && (cmd == Command::all || opt.dual);

    auto job = [&](std::size_t i) {
        const PointSample& p = pts[i];
        json s;
        s["index"] = i;
        s["x"] = to_json(p.x);
        s["y"] = to_json(p.y);
        try {
            if (do_t) s["tensors"] = detail::tensors_block(S, p);
            if (do_i) s["inverse"] = detail::inverse_block(S, p);
            if (do_p) s["projective"] = detail::flatness_block(S, p, FlatnessKind::projective, S.tolerances);
            if (do_d) s["dual"] = detail::flatness_block(S, p, FlatnessKind::dual, S.tolerances);
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            json err;
            err["index"] = i;
            err["x"] = to_json(p.x);
            err["y"] = to_json(p.y);
            err["error"] = e.what();
            return err;
        }
        return s;
    };
    // Input errors are rethrown after the pool has joined.
    std::optional<std::string> input_error;
    std::vector<json> samples = detail::parallel_map(pts.size(), opt.threads, [&](std::size_t i) -> json {
        try {
            return job(i);
        } catch (const InputError& e) {
            return json{{"index", i}, {"input_error", e.what()}};
        }
    });
    for (const auto& s : samples)
        if (s.contains("input_error")) throw InputError(s["input_error"].get<std::string>());

    int errors = 0, total = 0, failed = 0;
    json verdicts = json::object();
    for (const char* k : {"projective", "dual"}) {
        if ((std::string(k) == "projective" && !do_p) || (std::string(k) == "dual" && !do_d)) continue;
        verdicts[k] = json{{"flat", 0}, {"not-flat", 0}, {"inconclusive", 0}};
    }
    for (const auto& s : samples) {
        if (s.contains("error")) ++errors;
        for (auto it = verdicts.begin(); it != verdicts.end(); ++it)
            if (s.contains(it.key())) {
                const std::string v = s[it.key()]["verdict"].get<std::string>();
                it.value()[v] = it.value()[v].get<int>() + 1;
            }
    }
    json samples_json = json::array();
    for (auto& s : samples) samples_json.push_back(std::move(s));
    detail::count_checks(samples_json, total, failed);
    if (!minkowski.is_null()) detail::count_checks(minkowski, total, failed);

    RunResult r;
    json& R = r.report;
    R["tool"] = "frl";
    R["version"] = kVersion;
    R["timestamp"] = opt.stamp ? json(detail::utc_now()) : json(nullptr);
    R["command"] = command_name(cmd);
    R["scenario"] = echo(S);
    if (needs_samples) R["samples"] = samples_json;
    if (!minkowski.is_null()) R["minkowski"] = minkowski;
    json summary;
    summary["samples"] = pts.size();
    summary["sample_errors"] = errors;
    summary["checks"] = total;
    summary["failed_checks"] = failed;
    if (!verdicts.empty()) summary["verdicts"] = verdicts;
    if (S.random && S.random->strategy == SampleStrategy::family_bounds)
        summary["family_bounds"] = json{{"bound", family_bounds(S.family).description}, {"basis", "empirical"}};
    const bool pass = errors == 0 && failed == 0;
    summary["status"] = pass ? "pass" : "fail";
    R["summary"] = summary;
    r.exit_code = pass ? 0 : 1;
    return r;
}

inline Command parse_command(const std::string& name) {
    for (Command c : {Command::tensors, Command::inverse_check, Command::flatness, Command::minkowski_check, Command::all})
        if (command_name(c) == name) return c;
    throw InputError("unknown command '" + name + "'");
}

}  // namespace frl::cli
