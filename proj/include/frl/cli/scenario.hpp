#pragma once

/**
 * @file scenario.hpp
 * @brief Scenario documents: parsing with field-path diagnostics, canonical echo, sample generation.
 *
 * {
 *   "n": 2,
 *   "family": {"name": "generalized-kropina", "m": 2},      (or just the name)
 *   "metric": [[1, 0], [0, [{"exponents": [1, 0], "coeff": 2}, {"exponents": [0, 0], "coeff": 1}]]],
 *   "one_form": [0.1, 0],
 *   "max_degree": 4,
 *   "samples": {"points": [{"x": [1, 0], "y": [1, 1]}]}
 *           or {"random": {"count": 10, "seed": 1, "strategy": "family-bounds", "x_box": 1}},
 *   "tolerances": {"tol_cond": 1e-10, "tol_direct": 1e-9},
 *   "minkowski": {"phi": "family", "b": 0.5, "grid": 21}      (or "s": [...])
 * }
 * The metric may also be the string "identity".
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "frl/base/bundle.hpp"
#include "frl/base/fields.hpp"
#include "frl/base/minkowski.hpp"
#include "frl/base/polynomial.hpp"
#include "frl/cli/json_io.hpp"
#include "frl/errors.hpp"
#include "frl/flatness/report.hpp"
#include "frl/randers/family.hpp"
#include "frl/randers/sampler.hpp"

namespace frl::cli {

struct PointSample {
    std::vector<double> x, y;
};

enum class SampleStrategy { family_bounds, domain_only };

struct RandomSpec {
    int count = 1;
    std::uint64_t seed = 0;
    SampleStrategy strategy = SampleStrategy::family_bounds;
    double x_box = 1.0;
};

struct MinkowskiSpec {
    std::string phi = "family";  ///< "family", "randers" or "exponential"
    double b = 0.0;
    std::optional<int> grid;
    std::vector<double> s;
};

struct Scenario {
    int n = 0;
    Family family;
    int max_degree = kDefaultMaxDegree;
    MetricField metric;
    OneFormField one_form;
    json metric_doc;  ///< canonical form of the metric entries
    json one_form_doc;
    std::vector<PointSample> points;
    std::optional<RandomSpec> random;
    ToleranceOverrides tolerances;
    std::optional<MinkowskiSpec> minkowski;
};

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& msg) { throw InputError(path + ": " + msg); }

inline const json& member(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing field '" + key + "'");
    return *it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "expected a finite number");
    return v;
}

inline int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

inline std::vector<double> vec(const json& j, int n, const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) fail(path, "expected an array of " + std::to_string(n) + " numbers");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

inline void only_keys(const json& j, std::initializer_list<const char*> keys, const std::string& path) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) fail(path, "unknown field '" + it.key() + "'");
    }
}

/// Returns the entry and its canonical JSON.
inline std::pair<FieldEntry, json> entry(const json& j, int n, int max_degree, const std::string& path) {
    if (j.is_number()) {
        const double c = number(j, path);
        return {FieldEntry::constant(n, c), json(c)};
    }
    if (!j.is_array()) fail(path, "expected a number or a list of {exponents, coeff} terms");
    Polynomial p(n);
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string tp = path + "[" + std::to_string(t) + "]";
        if (!j[t].is_object()) fail(tp, "expected {exponents, coeff}");
        only_keys(j[t], {"exponents", "coeff"}, tp);
        const json& ex = member(j[t], "exponents", tp);
        if (!ex.is_array() || static_cast<int>(ex.size()) != n) fail(tp + ".exponents", "expected " + std::to_string(n) + " integers");
        Polynomial::Exponents e;
        for (std::size_t k = 0; k < ex.size(); ++k) e.push_back(integer(ex[k], tp + ".exponents[" + std::to_string(k) + "]"));
        try {
            p.add_term(e, number(member(j[t], "coeff", tp), tp + ".coeff"), max_degree);
        } catch (const InputError& err) {
            fail(tp, err.what());
        }
    }
    json canon = json::array();
    for (const auto& [e, c] : p.terms()) canon.push_back(json{{"exponents", e}, {"coeff", c}});
    return {FieldEntry(std::move(p)), canon};
}

}  // namespace detail

inline Scenario parse_scenario(const json& doc) {
    using namespace detail;
    if (!doc.is_object()) fail("$", "scenario must be a JSON object");
    only_keys(doc, {"n", "family", "metric", "one_form", "max_degree", "samples", "tolerances", "minkowski"}, "$");
    Scenario S;
    S.n = integer(member(doc, "n", "$"), "$.n");
    if (S.n < 2 || S.n > kMaxDim) fail("$.n", "dimension must be in 2.." + std::to_string(kMaxDim));
    const int n = S.n;

    const json& fj = member(doc, "family", "$");
    try {
        if (fj.is_string()) {
            S.family = Family::parse(fj.get<std::string>());
        } else {
            if (!fj.is_object()) fail("$.family", "expected a name or {name, m}");
            only_keys(fj, {"name", "m"}, "$.family");
            const json& nm = member(fj, "name", "$.family");
            if (!nm.is_string()) fail("$.family.name", "expected a string");
            const double m = fj.contains("m") ? number(fj["m"], "$.family.m") : 2.0;
            S.family = Family::parse(nm.get<std::string>(), m);
        }
    } catch (const DomainError& e) {
        fail("$.family", e.what());
    } catch (const InputError& e) {
        const std::string w = e.what();
        if (w.rfind("$", 0) == 0) throw;
        fail("$.family", w);
    }

    if (doc.contains("max_degree")) {
        S.max_degree = integer(doc["max_degree"], "$.max_degree");
        if (S.max_degree < 0) fail("$.max_degree", "must be >= 0");
    }

    const json& mj = member(doc, "metric", "$");
    std::vector<std::vector<FieldEntry>> rows(n, std::vector<FieldEntry>(n));
    S.metric_doc = json::array();
    if (mj.is_string()) {
        if (mj.get<std::string>() != "identity") fail("$.metric", "the only named metric is \"identity\"");
        for (int i = 0; i < n; ++i) {
            json r = json::array();
            for (int j = 0; j < n; ++j) {
                rows[i][j] = FieldEntry::constant(n, i == j ? 1.0 : 0.0);
                r.push_back(i == j ? 1.0 : 0.0);
            }
            S.metric_doc.push_back(r);
        }
    } else {
        if (!mj.is_array() || static_cast<int>(mj.size()) != n) fail("$.metric", "expected an n x n array");
        for (int i = 0; i < n; ++i) {
            const std::string rp = "$.metric[" + std::to_string(i) + "]";
            if (!mj[i].is_array() || static_cast<int>(mj[i].size()) != n) fail(rp, "expected " + std::to_string(n) + " entries");
            json r = json::array();
            for (int j = 0; j < n; ++j) {
                auto [e, canon] = entry(mj[i][j], n, S.max_degree, rp + "[" + std::to_string(j) + "]");
                rows[i][j] = e;
                r.push_back(canon);
            }
            S.metric_doc.push_back(r);
        }
    }
    try {
        S.metric = MetricField(n, rows);
    } catch (const InputError& e) {
        fail("$.metric", e.what());
    }

    const json& bj = member(doc, "one_form", "$");
    if (!bj.is_array() || static_cast<int>(bj.size()) != n) fail("$.one_form", "expected " + std::to_string(n) + " entries");
    std::vector<FieldEntry> be;
    S.one_form_doc = json::array();
    for (int i = 0; i < n; ++i) {
        auto [e, canon] = entry(bj[i], n, S.max_degree, "$.one_form[" + std::to_string(i) + "]");
        be.push_back(e);
        S.one_form_doc.push_back(canon);
    }
    S.one_form = OneFormField(n, be);

    if (doc.contains("samples")) {
        const json& sj = doc["samples"];
        if (!sj.is_object()) fail("$.samples", "expected {points: [...]} or {random: {...}}");
        only_keys(sj, {"points", "random"}, "$.samples");
        if (sj.contains("points") == sj.contains("random")) fail("$.samples", "give exactly one of 'points' or 'random'");
        if (sj.contains("points")) {
            const json& pj = sj["points"];
            if (!pj.is_array() || pj.empty()) fail("$.samples.points", "expected a non-empty array");
            for (std::size_t k = 0; k < pj.size(); ++k) {
                const std::string pp = "$.samples.points[" + std::to_string(k) + "]";
                if (!pj[k].is_object()) fail(pp, "expected {x, y}");
                only_keys(pj[k], {"x", "y"}, pp);
                S.points.push_back({vec(member(pj[k], "x", pp), n, pp + ".x"), vec(member(pj[k], "y", pp), n, pp + ".y")});
            }
        } else {
            const json& rj = sj["random"];
            const std::string rp = "$.samples.random";
            if (!rj.is_object()) fail(rp, "expected an object");
            only_keys(rj, {"count", "seed", "strategy", "x_box"}, rp);
            RandomSpec R;
            R.count = integer(member(rj, "count", rp), rp + ".count");
            if (R.count < 1) fail(rp + ".count", "must be >= 1");
            const json& seed = member(rj, "seed", rp);
            if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
                fail(rp + ".seed", "expected a non-negative integer");
            R.seed = seed.get<std::uint64_t>();
            if (rj.contains("strategy")) {
                if (!rj["strategy"].is_string()) fail(rp + ".strategy", "expected a string");
                const auto st = rj["strategy"].get<std::string>();
                if (st == "family-bounds") R.strategy = SampleStrategy::family_bounds;
                else if (st == "domain-only") R.strategy = SampleStrategy::domain_only;
                else fail(rp + ".strategy", "expected \"family-bounds\" or \"domain-only\"");
            }
            if (rj.contains("x_box")) {
                R.x_box = number(rj["x_box"], rp + ".x_box");
                if (R.x_box < 0.0) fail(rp + ".x_box", "must be >= 0");
            }
            S.random = R;
        }
    }

    if (doc.contains("tolerances")) {
        const json& tj = doc["tolerances"];
        if (!tj.is_object()) fail("$.tolerances", "expected an object");
        only_keys(tj, {"tol_cond", "tol_direct"}, "$.tolerances");
        auto pos = [&](const char* k) {
            const double v = number(tj[k], std::string("$.tolerances.") + k);
            if (!(v > 0.0)) fail(std::string("$.tolerances.") + k, "must be > 0");
            return v;
        };
        if (tj.contains("tol_cond")) S.tolerances.tol_cond = pos("tol_cond");
        if (tj.contains("tol_direct")) S.tolerances.tol_direct = pos("tol_direct");
    }

    if (doc.contains("minkowski")) {
        const json& kj = doc["minkowski"];
        const std::string kp = "$.minkowski";
        if (!kj.is_object()) fail(kp, "expected an object");
        only_keys(kj, {"phi", "b", "grid", "s"}, kp);
        MinkowskiSpec M;
        if (kj.contains("phi")) {
            if (!kj["phi"].is_string()) fail(kp + ".phi", "expected a string");
            M.phi = kj["phi"].get<std::string>();
            if (M.phi != "family" && M.phi != "randers" && M.phi != "exponential")
                fail(kp + ".phi", "expected \"family\", \"randers\" or \"exponential\"");
        }
        M.b = number(member(kj, "b", kp), kp + ".b");
        if (kj.contains("grid") == kj.contains("s")) fail(kp, "give exactly one of 'grid' or 's'");
        if (kj.contains("grid")) {
            M.grid = integer(kj["grid"], kp + ".grid");
            if (*M.grid < 1) fail(kp + ".grid", "must be >= 1");
        } else {
            const json& s = kj["s"];
            if (!s.is_array() || s.empty()) fail(kp + ".s", "expected a non-empty array");
            for (std::size_t k = 0; k < s.size(); ++k) M.s.push_back(number(s[k], kp + ".s[" + std::to_string(k) + "]"));
        }
        S.minkowski = M;
    }
    return S;
}

/// Parse text; JSON syntax errors report the line number.
inline Scenario parse_scenario_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        int line = 1;
        for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw InputError("line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
    }
    return parse_scenario(doc);
}

/** @brief Canonical scenario document; parse_scenario(echo(S)) is equivalent to S. */
inline json echo(const Scenario& S) {
    json j;
    j["n"] = S.n;
    json fam;
    fam["name"] = S.family.name();
    if (S.family.kind() == FamilyKind::GeneralizedKropina) fam["m"] = S.family.m();
    j["family"] = fam;
    j["metric"] = S.metric_doc;
    j["one_form"] = S.one_form_doc;
    j["max_degree"] = S.max_degree;
    json samples;
    if (!S.random && S.points.empty()) {
        // no samples
    } else if (S.random) {
        samples["random"] = {{"count", S.random->count},
                             {"seed", S.random->seed},
                             {"strategy", S.random->strategy == SampleStrategy::family_bounds ? "family-bounds" : "domain-only"},
                             {"x_box", S.random->x_box}};
    } else {
        json pts = json::array();
        for (const auto& p : S.points) pts.push_back({{"x", to_json(p.x)}, {"y", to_json(p.y)}});
        samples["points"] = pts;
    }
    if (!samples.is_null()) j["samples"] = samples;
    if (S.tolerances.tol_cond || S.tolerances.tol_direct) {
        json t = json::object();
        if (S.tolerances.tol_cond) t["tol_cond"] = *S.tolerances.tol_cond;
        if (S.tolerances.tol_direct) t["tol_direct"] = *S.tolerances.tol_direct;
        j["tolerances"] = t;
    }
    if (S.minkowski) {
        json k;
        k["phi"] = S.minkowski->phi;
        k["b"] = S.minkowski->b;
        if (S.minkowski->grid) k["grid"] = *S.minkowski->grid;
        else k["s"] = to_json(S.minkowski->s);
        j["minkowski"] = k;
    }
    return j;
}

/**
 * @brief The (x, y) points of the scenario; random specs draw x uniformly from
 *        [-x_box, x_box]^n and y from a standard normal, rejecting against the strategy.
 * @throws InputError when a random sample is not found within kMaxSampleAttempts.
 */
inline std::vector<PointSample> generate_samples(const Scenario& S) {
    if (!S.random) return S.points;
    const RandomSpec& R = *S.random;
    std::mt19937_64 rng(R.seed);
    std::uniform_real_distribution<double> ux(-R.x_box, R.x_box);
    std::normal_distribution<double> ny(0.0, 1.0);
    std::vector<PointSample> out;
    for (int k = 0; k < R.count; ++k) {
        bool found = false;
        for (int attempt = 0; attempt < kMaxSampleAttempts && !found; ++attempt) {
            PointSample p{std::vector<double>(S.n), std::vector<double>(S.n)};
            for (double& v : p.x) v = ux(rng);
            for (double& v : p.y) v = ny(rng);
            try {
                const BaseBundle B = base_bundle(S.metric, S.one_form, p.x, p.y);
                const bool ok = R.strategy == SampleStrategy::family_bounds ? within_family_bounds(S.family, B)
                                                                            : bool(domain_check(S.family, B.F, B.beta));
                if (!ok) continue;
            } catch (const DomainError&) {
                continue;
            }
            out.push_back(std::move(p));
            found = true;
        }
        if (!found) {
            const std::string bound = R.strategy == SampleStrategy::family_bounds
                                          ? family_bounds(S.family).description
                                          : "domain of " + S.family.name();
            throw InputError("sample " + std::to_string(k) + ": no admissible point within " +
                             std::to_string(kMaxSampleAttempts) + " attempts (bound likely violated: " + bound + ")");
        }
    }
    return out;
}

/// Phi for minkowski-check.
inline PhiSpec minkowski_phi(const Scenario& S) {
    if (!S.minkowski || S.minkowski->phi == "family") return family_phi(S.family);
    return S.minkowski->phi == "randers" ? randers_phi() : exponential_phi();
}

}  // namespace frl::cli
