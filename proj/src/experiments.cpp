#include "payoffset/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "payoffset/rates.hpp"
#include "payoffset/rng.hpp"

namespace payoffset {

namespace {

// ---- config access -------------------------------------------------------

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

double get_real(const Json& c, const std::string& key, std::optional<double> def, double lo, double hi) {
    if (!c.contains(key)) {
        if (!def) bad(key, "missing");
        return *def;
    }
    const Json& v = c.at(key);
    if (!v.is_number()) bad(key, "must be a number");
    const double x = v.get<double>();
    if (!(x >= lo && x <= hi)) bad(key, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
}

uint64_t get_count(const Json& c, const std::string& key, std::optional<uint64_t> def, uint64_t lo,
                   uint64_t hi = UINT64_MAX) {
    if (!c.contains(key)) {
        if (!def) bad(key, "missing");
        return *def;
    }
    const Json& v = c.at(key);
    if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
        bad(key, "must be an integer");
    const double d = v.get<double>();
    if (d < static_cast<double>(lo) || d > static_cast<double>(hi)) bad(key, "out of range");
    return static_cast<uint64_t>(d);
}

std::string get_string(const Json& c, const std::string& key, const std::string& def,
                       std::initializer_list<const char*> allowed) {
    if (!c.contains(key)) return def;
    if (!c.at(key).is_string()) bad(key, "must be a string");
    const std::string s = c.at(key).get<std::string>();
    for (const char* a : allowed)
        if (s == a) return s;
    bad(key, "unexpected value '" + s + "'");
}

uint64_t get_seed(const Json& c) {
    if (!c.contains("seed")) bad("seed", "missing (pass --seed or set it in the config)");
    const Json& v = c.at("seed");
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0))
        bad("seed", "must be a nonnegative integer");
    return v.get<uint64_t>();
}

Strategy random_strategy(size_t n, Rng& rng) {
    Vec v(n);
    double s = 0.0;
    for (double& e : v) {
        e = -std::log(1.0 - rng.uniform());
        s += e;
    }
    for (double& e : v) e /= s;
    return Strategy(std::move(v));
}

StrategyProfile get_profile(const Json& c, uint64_t seed) {
    try {
        if (c.contains("profile")) return profile_from_json(c.at("profile"));
    } catch (const InputError& e) {
        bad("profile", e.what());
    }
    if (c.contains("random_profile")) {
        const uint64_t n = get_count(c.at("random_profile"), "n", std::nullopt, 2, 20);
        Rng rng(derive_seed(seed, 0x5EED));
        Strategy x = random_strategy(n, rng);
        Strategy y = random_strategy(n, rng);
        return {x, y};
    }
    bad("profile", "missing (give 'profile' {x, y} or 'random_profile' {n})");
}

// ---- formatting ------------------------------------------------------------

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    return std::string(buf, res.ptr);
}
std::string fmt(uint64_t v) { return std::to_string(v); }
std::string fmt(bool b) { return b ? "true" : "false"; }

// ---- distance diagnostics --------------------------------------------------

struct DistanceConfig {
    std::string mode;  // grid, vertex, mc, none (after resolving auto)
    double resolution = 0.1;
    size_t mc_samples = 64;
};

DistanceConfig get_distance(const Json& c, size_t n) {
    DistanceConfig d;
    d.mode = get_string(c, "distance", "auto", {"auto", "grid", "vertex", "mc", "none"});
    if (d.mode == "auto") d.mode = n == 2 ? "grid" : "mc";
    if ((d.mode == "grid" || d.mode == "vertex") && n != 2) bad("distance", "grid/vertex oracles need n = 2");
    d.resolution = get_real(c, "resolution", 0.1, 1e-3, 2.0);
    d.mc_samples = get_count(c, "mc_samples", 64, 1, 1'000'000);
    return d;
}

struct Diagnostic {
    double l1_x = 0.0, l1_y = 0.0;
    bool support_match = false;
    std::string bound_kind;
    double bound = 0.0;
    std::string mode;
    double distance = 0.0;
    double distance_upper = 0.0;
    bool bound_holds = true;
};

Diagnostic diagnose(GameSet g, const StrategyProfile& p, const StrategyProfile& ph, double alpha,
                    const DistanceConfig& dc, uint64_t seed) {
    Diagnostic d;
    d.l1_x = l1_distance(p.x, ph.x);
    d.l1_y = l1_distance(p.y, ph.y);
    d.support_match = same_support(p.x, ph.x) && same_support(p.y, ph.y);
    if (alpha > 0.0) {
        d.bound_kind = "Approx";
        d.bound = hausdorff_upper_bound(BoundKind::Approx, p.x, ph.x, p.y, ph.y, alpha);
    } else if (d.support_match) {
        const BoundKind k = g == GameSet::Gsg ? BoundKind::ExactGsg : BoundKind::ExactZsg;
        d.bound_kind = g == GameSet::Gsg ? "ExactGsg" : "ExactZsg";
        d.bound = hausdorff_upper_bound(k, p.x, ph.x, p.y, ph.y, alpha);
    } else {
        d.bound_kind = "SupportMismatch";
        d.bound = std::numeric_limits<double>::infinity();
    }
    HausdorffEstimate e;
    double slack = 0.0;
    if (dc.mode == "grid") {
        e = game_hausdorff_grid(g, p, ph, alpha, dc.resolution);
        slack = dc.resolution;
    } else if (dc.mode == "vertex") {
        e = game_hausdorff_vertex(g, p, ph, alpha);
    } else if (dc.mode == "mc") {
        e = game_hausdorff_mc(g, p, ph, alpha, dc.mc_samples, seed);
    } else {
        d.mode = "none";
        d.distance = d.distance_upper = std::nan("");
        return d;
    }
    d.mode = to_string(e.mode);
    d.distance = e.value;
    d.distance_upper = e.upper;
    d.bound_holds = d.distance <= d.bound + slack;
    return d;
}

const std::vector<std::string> kDiagColumns = {"l1_x",    "l1_y",     "support_match",  "bound_kind", "bound",
                                               "distance_mode", "distance", "distance_upper", "bound_holds"};

void append_diag(std::vector<std::string>& row, const Diagnostic& d) {
    row.insert(row.end(), {fmt(d.l1_x), fmt(d.l1_y), fmt(d.support_match), d.bound_kind, fmt(d.bound), d.mode,
                           fmt(d.distance), fmt(d.distance_upper), fmt(d.bound_holds)});
}

GameSet get_game(const Json& c) { return get_string(c, "game", "Gsg", {"Gsg", "Zsg"}) == "Gsg" ? GameSet::Gsg : GameSet::Zsg; }

Json systems_json(GameSet g, const StrategyProfile& p, double alpha) {
    Json out = Json::array();
    const std::vector<SetKind> kinds =
        g == GameSet::Gsg ? std::vector<SetKind>{SetKind::GsgRow, SetKind::GsgCol} : std::vector<SetKind>{SetKind::Zsg};
    for (SetKind k : kinds) out.push_back(to_json(build_system(SetSpec{k, p.x, p.y, alpha})));
    return out;
}

template <class F>
ExperimentReport timed(const char* command, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport r;
    r.command = command;
    body(r);
    r.wall_clock_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExperimentReport run_estimate(const Json& c) {
    return timed("estimate", [&](ExperimentReport& r) {
        const uint64_t seed = get_seed(c);
        const GameSet g = get_game(c);
        const double alpha = get_real(c, "alpha", 0.0, 0.0, 1.0);
        const StrategyProfile p = get_profile(c, seed);
        const size_t n = p.n();
        const uint64_t reps = get_count(c, "reps", 1, 1, 100000);
        const DistanceConfig dc = get_distance(c, n);

        uint64_t m = 0;
        if (c.contains("m") && c.at("m").is_string()) {
            if (c.at("m").get<std::string>() != "auto") bad("m", "must be a count or \"auto\"");
            RateParams rp;
            rp.n = n;
            rp.epsilon = get_real(c, "epsilon", 0.1, 1e-9, 1.0 - 1e-12);
            rp.delta = get_real(c, "delta", 0.05, 1e-12, 1.0 - 1e-12);
            const Regime regime = alpha > 0.0 ? Regime::Approx : Regime::Exact;
            if (alpha > 0.0)
                rp.alpha = alpha;
            else
                rp.pi_min = pi_min(p);
            const uint64_t formula = sample_size(regime, rp);
            const uint64_t m_max = get_count(c, "m_max", 10'000'000, 1);
            m = std::min(formula, m_max);
            r.summary["m_formula"] = formula;
            r.summary["m_capped"] = formula > m_max;
            if (formula > m_max) {
                const std::string w = "sample_size gives m = " + std::to_string(formula) + ", capped at m_max = " +
                                      std::to_string(m_max) + "; the (epsilon, delta) guarantee no longer applies";
                r.warnings.push_back(w);
                std::cerr << "WARNING: " << w << "\n";
            }
        } else {
            m = get_count(c, "m", std::nullopt, 1, 1'000'000'000);
        }
        r.summary["m"] = m;

        r.config = c;
        r.columns = {"rep", "m"};
        r.columns.insert(r.columns.end(), kDiagColumns.begin(), kDiagColumns.end());
        Json recommended = Json::array();
        for (uint64_t rep = 0; rep < reps; ++rep) {
            const uint64_t rs = derive_seed(seed, rep);
            const SampleRecord rec = sample_profile(p, m, rs);
            const StrategyProfile ph = empirical_profile(rec);
            const Diagnostic d = diagnose(g, p, ph, alpha, dc, derive_seed(rs, 2));
            std::vector<std::string> row = {fmt(rep), fmt(m)};
            append_diag(row, d);
            r.rows.push_back(std::move(row));
            recommended.push_back({{"rep", rep},
                                   {"counts", to_json(rec)},
                                   {"empirical_profile", to_json(ph)},
                                   {"systems", systems_json(g, ph, alpha)}});
        }
        r.artifacts["systems.json"] = {{"true_profile", to_json(p)},
                                       {"true_systems", systems_json(g, p, alpha)},
                                       {"recommended", recommended}};
    });
}

ExperimentReport run_convergence(const Json& c) {
    return timed("convergence", [&](ExperimentReport& r) {
        const uint64_t seed = get_seed(c);
        const GameSet g = get_game(c);
        const double alpha = get_real(c, "alpha", 0.0, 0.0, 1.0);
        const StrategyProfile p = get_profile(c, seed);
        const uint64_t reps = get_count(c, "reps", std::nullopt, 50, 1'000'000);
        const DistanceConfig dc = get_distance(c, p.n());
        if (!c.contains("m_grid") || !c.at("m_grid").is_array()) bad("m_grid", "missing or not an array");
        std::vector<uint64_t> grid;
        for (const Json& v : c.at("m_grid")) {
            if (!v.is_number() || v.get<double>() < 1 || std::floor(v.get<double>()) != v.get<double>())
                bad("m_grid", "entries must be positive integers");
            grid.push_back(v.get<uint64_t>());
        }
        if (grid.size() < 4) bad("m_grid", "needs at least 4 points");
        for (size_t i = 1; i < grid.size(); ++i)
            if (grid[i] <= grid[i - 1]) bad("m_grid", "must be strictly increasing");

        r.config = c;
        r.columns = {"m", "rep"};
        r.columns.insert(r.columns.end(), kDiagColumns.begin(), kDiagColumns.end());
        Json per_m = Json::array();
        std::vector<double> ms, med_bound, med_dist;
        uint64_t violations = 0;
        for (size_t mi = 0; mi < grid.size(); ++mi) {
            const uint64_t m = grid[mi];
            std::vector<double> bounds, dists;
            uint64_t matched = 0, viol_m = 0;
            for (uint64_t rep = 0; rep < reps; ++rep) {
                const uint64_t rs = derive_seed(derive_seed(seed, mi + 1), rep);
                const StrategyProfile ph = empirical_profile(sample_profile(p, m, rs));
                const Diagnostic d = diagnose(g, p, ph, alpha, dc, derive_seed(rs, 2));
                std::vector<std::string> row = {fmt(m), fmt(rep)};
                append_diag(row, d);
                r.rows.push_back(std::move(row));
                bounds.push_back(d.bound);
                dists.push_back(d.distance);
                matched += d.support_match;
                viol_m += !d.bound_holds;
            }
            violations += viol_m;
            ms.push_back(static_cast<double>(m));
            med_bound.push_back(median(bounds));
            med_dist.push_back(median(dists));
            per_m.push_back({{"m", m},
                             {"median_bound", med_bound.back()},
                             {"median_distance", med_dist.back()},
                             {"support_match_fraction", static_cast<double>(matched) / reps},
                             {"bound_violations", viol_m}});
        }
        bool nonincreasing = true;
        for (size_t i = 1; i < med_dist.size(); ++i) nonincreasing = nonincreasing && med_dist[i] <= med_dist[i - 1];
        const bool finite = std::all_of(med_bound.begin(), med_bound.end(),
                                        [](double b) { return std::isfinite(b) && b > 0.0; });
        r.summary["per_m"] = per_m;
        r.summary["bound_slope"] = finite ? Json(loglog_slope(ms, med_bound)) : Json(nullptr);
        r.summary["median_distance_nonincreasing"] = nonincreasing;
        r.summary["bound_violations"] = violations;
        if (violations > 0)
            r.warnings.push_back(std::to_string(violations) + " rows have a measured distance above the bound");
    });
}

ExperimentReport run_coverage(const Json& c) {
    return timed("coverage", [&](ExperimentReport& r) {
        const uint64_t seed = get_seed(c);
        const uint64_t m = get_count(c, "m", std::nullopt, 3);
        const double delta = get_real(c, "delta", std::nullopt, 1e-12, 1.0);
        const uint64_t reps = get_count(c, "reps", std::nullopt, 1000, 100'000'000);
        const double beta = get_real(c, "beta", 0.5, 0.0, 1.0);
        Strategy p;
        if (c.contains("p")) {
            try {
                p = strategy_from_json(c.at("p"));
            } catch (const InputError& e) {
                bad("p", e.what());
            }
        } else {
            Rng rng(derive_seed(seed, 0x5EED));
            p = random_strategy(get_count(c, "n", std::nullopt, 2, 64), rng);
        }
        const size_t n = p.size();
        if (c.contains("n") && get_count(c, "n", std::nullopt, 2, 64) != n) bad("n", "disagrees with the length of p");
        const bool subsets = n <= 6;
        if (!subsets) r.warnings.push_back("n > 6: subset-Bernstein coverage skipped");

        // Subsets of supp(p) with mass <= beta.
        std::vector<uint32_t> family;
        if (subsets)
            for (uint32_t mask = 1; mask < (1U << n); ++mask) {
                double mass = 0.0;
                bool ok = true;
                for (size_t i = 0; i < n; ++i)
                    if (mask >> i & 1U) {
                        ok = ok && p[i] > 0.0;
                        mass += p[i];
                    }
                if (ok && mass <= beta) family.push_back(mask);
            }

        const double md = static_cast<double>(m);
        const double l1b = l1_bound(n, md, delta);
        const double sbb = subset_bernstein_bound(n, md, delta, beta);
        const MissingMass mm = missing_mass_bounds(n, md, delta);
        double expected_missing = 0.0;
        for (size_t i = 0; i < n; ++i) expected_missing += p[i] * std::pow(1.0 - p[i], md);

        r.config = c;
        r.columns = {"rep", "l1", "l1_violation", "max_subset_dev", "subset_violation", "missing_mass",
                     "missing_violation"};
        uint64_t v_l1 = 0, v_sub = 0, v_mm = 0;
        const StrategyProfile pp(p, p);
        for (uint64_t rep = 0; rep < reps; ++rep) {
            const SampleRecord rec = sample_profile(pp, m, derive_seed(seed, rep));
            Vec ph(n);
            for (size_t i = 0; i < n; ++i) ph[i] = static_cast<double>(rec.row_counts[i]) / md;
            double l1 = 0.0, missing = 0.0;
            for (size_t i = 0; i < n; ++i) {
                l1 += std::abs(p[i] - ph[i]);
                if (rec.row_counts[i] == 0) missing += p[i];
            }
            double worst = 0.0;
            for (uint32_t mask : family) {
                double s = 0.0;
                for (size_t i = 0; i < n; ++i)
                    if (mask >> i & 1U) s += p[i] - ph[i];
                worst = std::max(worst, std::abs(s));
            }
            const bool a = l1 > l1b, b = subsets && worst > sbb, cm = missing - expected_missing > mm.deviation;
            v_l1 += a;
            v_sub += b;
            v_mm += cm;
            r.rows.push_back({fmt(rep), fmt(l1), fmt(a), fmt(worst), fmt(b), fmt(missing), fmt(cm)});
        }
        auto frac = [&](uint64_t v) { return static_cast<double>(v) / static_cast<double>(reps); };
        r.summary["bounds"] = {{"l1_bound", l1b},
                               {"subset_bernstein_bound", sbb},
                               {"missing_mass_deviation", mm.deviation},
                               {"missing_mass_mean_bound", mm.mean},
                               {"missing_mass_expectation", expected_missing}};
        r.summary["subsets_checked"] = family.size();
        r.summary["violation_fraction"] = {{"l1", frac(v_l1)},
                                           {"subset_bernstein", subsets ? Json(frac(v_sub)) : Json(nullptr)},
                                           {"missing_mass", frac(v_mm)}};
        r.assertions_passed = frac(v_l1) <= delta && frac(v_sub) <= delta && frac(v_mm) <= delta &&
                              expected_missing <= mm.mean;
        r.summary["all_within_delta"] = r.assertions_passed;
    });
}

namespace {

std::vector<Json> default_lb_cases() {
    std::vector<Json> out;
    for (double pi : {0.1, 0.3, 0.5}) out.push_back({{"family", "Impossibility"}, {"pi", pi}});
    for (double e : {0.01, 0.05, 0.1}) out.push_back({{"family", "EpsFamily"}, {"epsilon", e}});
    for (double a : {0.05, 0.2})
        for (double e : {0.01, 0.05}) out.push_back({{"family", "AlphaLog"}, {"alpha", a}, {"epsilon", e}});
    out.push_back({{"family", "NPacking"}, {"n", 8}, {"epsilon", 1.0 / 384.0}, {"packing_target", 6}});
    out.push_back({{"family", "AlphaN"}, {"n", 9}, {"alpha", 0.2}, {"epsilon", 1.0 / 128.0}, {"packing_target", 6}});
    return out;
}

}  // namespace

ExperimentReport run_verify_lb(const Json& c) {
    return timed("verify-lb", [&](ExperimentReport& r) {
        const uint64_t seed = get_seed(c);
        const double tol = get_real(c, "tol", 1e-6, 0.0, 1.0);
        std::vector<Json> cases;
        if (c.contains("cases")) {
            if (!c.at("cases").is_array()) bad("cases", "must be an array");
            cases = c.at("cases").get<std::vector<Json>>();
        } else {
            cases = default_lb_cases();
        }
        r.config = c;
        r.columns = {"family", "params", "kind", "alpha", "certified", "measured", "witness_violation", "ok"};
        bool all = true;
        for (size_t i = 0; i < cases.size(); ++i) {
            const Json& k = cases[i];
            const std::string field = "cases[" + std::to_string(i) + "]";
            if (!k.is_object() || !k.contains("family") || !k.at("family").is_string()) bad(field, "needs a family");
            InstanceFamily fam;
            try {
                fam = instance_family_from_string(k.at("family").get<std::string>());
            } catch (const InputError& e) {
                bad(field, e.what());
            }
            LbParams lp;
            lp.pi = get_real(k, "pi", lp.pi, 0.0, 1.0);
            lp.epsilon = get_real(k, "epsilon", lp.epsilon, 0.0, 1.0);
            lp.alpha = get_real(k, "alpha", lp.alpha, 0.0, 1.0);
            lp.n = get_count(k, "n", lp.n, 2, 64);
            lp.packing_target = get_count(k, "packing_target", lp.packing_target, 2, 64);
            lp.seed = derive_seed(seed, i);
            LbInstance inst;
            try {
                inst = make_lb_instance(fam, lp);
            } catch (const RangeError& e) {
                bad(field, e.what());
            }
            // Witnesses must lie in their own profile's set.
            double wv = -std::numeric_limits<double>::infinity();
            if (inst.packing) {
                for (size_t v = 0; v < inst.profiles.size(); ++v)
                    for (size_t w = 0; w < inst.profiles.size(); ++w)
                        if (v != w)
                            wv = std::max(wv, membership(flatten(packing_witness(inst, v, w)),
                                                         build_system(inst.spec(v)))
                                                  .max_violation);
            } else {
                wv = membership(flatten(*inst.witness), build_system(inst.spec(0))).max_violation;
            }
            const SeparationCheck s = verify_separation(inst, tol);
            const bool ok = s.ok && wv <= kMembershipTol;
            all = all && ok;
            std::string params;
            for (const auto& [key, val] : inst.params) params += (params.empty() ? "" : ";") + key + "=" + fmt(val);
            r.rows.push_back({to_string(fam), params, to_string(inst.kind), fmt(inst.alpha),
                              fmt(inst.certified_separation), fmt(s.measured), fmt(wv), fmt(ok)});
        }
        r.assertions_passed = all;
        r.summary["all_ok"] = all;
        r.summary["tol"] = tol;
    });
}

ExperimentReport run_bounds(const Json& c) {
    return timed("bounds", [&](ExperimentReport& r) {
        get_seed(c);
        auto list = [&](const char* key, std::vector<double> def) {
            if (!c.contains(key)) return def;
            if (!c.at(key).is_array()) bad(key, "must be an array");
            return c.at(key).get<std::vector<double>>();
        };
        const auto ns = list("n", {2, 4});
        const auto eps = list("epsilon", {0.1, 0.05});
        const auto deltas = list("delta", {0.05, 0.1});
        const auto alphas = list("alpha", {0.1, 0.2});
        const auto pis = list("pi_min", {0.1, 0.3});
        r.config = c;
        r.columns = {"regime", "n", "epsilon", "delta", "alpha", "pi_min", "sample_size", "lower_family", "lower_bound",
                     "dominates"};
        bool all = true;
        auto emit = [&](Regime regime, const RateParams& p, const std::vector<LbFamily>& fams, const std::string& a,
                        const std::string& pm) {
            uint64_t m;
            try {
                m = sample_size(regime, p);
            } catch (const RangeError& e) {
                bad("grid", e.what());
            }
            std::string fam = "none";
            double lb = 0.0;
            for (LbFamily f : fams) {
                try {
                    const double v = minimax_lower_bound(f, p);
                    if (v > lb || fam == "none") {
                        lb = v;
                        fam = to_string(f);
                    }
                } catch (const RangeError&) {
                }
            }
            const bool dom = static_cast<double>(m) >= lb;
            all = all && dom;
            r.rows.push_back({regime == Regime::Exact ? "Exact" : "Approx", fmt(static_cast<uint64_t>(p.n)),
                              fmt(p.epsilon), fmt(p.delta), a, pm, fmt(m), fam, fam == "none" ? "nan" : fmt(lb),
                              fmt(dom)});
        };
        for (double n : ns)
            for (double e : eps)
                for (double d : deltas) {
                    RateParams p;
                    p.n = static_cast<size_t>(n);
                    p.epsilon = e;
                    p.delta = d;
                    for (double pm : pis) {
                        RateParams q = p;
                        q.pi_min = pm;
                        emit(Regime::Exact, q, {LbFamily::ExactPiMin, LbFamily::ExactEps, LbFamily::ExactN}, "0",
                             fmt(pm));
                    }
                    for (double a : alphas) {
                        RateParams q = p;
                        q.alpha = a;
                        emit(Regime::Approx, q, {LbFamily::ApproxLog, LbFamily::ApproxN}, fmt(a), "nan");
                    }
                }
        r.assertions_passed = all;
        r.summary["all_dominate"] = all;
    });
}

ExperimentReport run_command(const std::string& command, const Json& config) {
    if (command == "estimate") return run_estimate(config);
    if (command == "convergence") return run_convergence(config);
    if (command == "coverage") return run_coverage(config);
    if (command == "verify-lb") return run_verify_lb(config);
    if (command == "bounds") return run_bounds(config);
    throw ConfigError("unknown command '" + command + "'");
}

std::string to_csv(const ExperimentReport& r) {
    std::ostringstream os;
    for (size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    os << "\n";
    for (const auto& row : r.rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

std::string config_hash(const std::string& command, const Json& config) {
    const std::string s = command + "\n" + config.dump();
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string write_report(const ExperimentReport& r, const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::path(out_dir) / (r.command + "-" + config_hash(r.command, r.config));
    fs::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream f(dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
        f << text;
    };
    put("config.json", r.config.dump(2) + "\n");
    put("rows.csv", to_csv(r));
    Json s = r.summary;
    s["command"] = r.command;
    s["artifact_version"] = kArtifactVersion;
    s["csv_schema"] = kCsvSchema;
    s["warnings"] = r.warnings;
    s["assertions_passed"] = r.assertions_passed;
    s["wall_clock_s"] = r.wall_clock_s;
    put("summary.json", s.dump(2) + "\n");
    for (const auto& [name, content] : r.artifacts.items()) put(name, content.dump(2) + "\n");
    return dir.string();
}

}  // namespace payoffset
