#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "payoffset/experiments.hpp"
#include "payoffset/rates.hpp"

using namespace payoffset;

namespace {

Json parse(const char* s) { return Json::parse(s); }

size_t column(const ExperimentReport& r, const std::string& name) {
    for (size_t i = 0; i < r.columns.size(); ++i)
        if (r.columns[i] == name) return i;
    FAIL("no column " << name);
    return 0;
}

}  // namespace

TEST_CASE("estimate with automatic m uses the sample-size formula") {
    const Json c = parse(R"({"seed": 3, "game": "Gsg", "alpha": 0.0, "m": "auto", "epsilon": 0.5, "delta": 0.1,
                             "profile": {"x": [0.5, 0.5], "y": [0.4, 0.6]}, "distance": "none"})");
    const ExperimentReport r = run_estimate(c);
    RateParams p;
    p.n = 2;
    p.epsilon = 0.5;
    p.delta = 0.1;
    p.pi_min = 0.4;
    CHECK(r.summary.at("m_formula").get<uint64_t>() == sample_size(Regime::Exact, p));
    CHECK(r.summary.at("m").get<uint64_t>() == std::min<uint64_t>(sample_size(Regime::Exact, p), 10'000'000));
}

TEST_CASE("estimate caps automatic m with a warning") {
    const Json c = parse(R"({"seed": 3, "alpha": 0.2, "m": "auto", "m_max": 1000,
                             "profile": {"x": [0.5, 0.5], "y": [0.4, 0.6]}, "distance": "none"})");
    const ExperimentReport r = run_estimate(c);
    CHECK(r.summary.at("m").get<uint64_t>() == 1000);
    CHECK(r.summary.at("m_capped").get<bool>());
    CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("degenerate strategy is recovered exactly") {
    const Json c = parse(R"({"seed": 9, "alpha": 0.1, "m": 500, "reps": 3,
                             "profile": {"x": [1.0, 0.0, 0.0], "y": [0.2, 0.3, 0.5]}, "distance": "none"})");
    const ExperimentReport r = run_estimate(c);
    const Strategy x({1.0, 0.0, 0.0});
    for (const Json& rec : r.artifacts.at("systems.json").at("recommended")) {
        CHECK(rec.at("empirical_profile").at("x").get<Vec>() == x.probs);
        const Strategy yh = strategy_from_json(rec.at("empirical_profile").at("y"));
        CHECK(rec.at("systems").at(0) == to_json(build_system({SetKind::GsgRow, x, yh, 0.1})));
    }
    const size_t l1 = column(r, "l1_x");
    for (const auto& row : r.rows) CHECK(row[l1] == "0");
}

TEST_CASE("reports are deterministic") {
    const Json c = parse(R"({"seed": 11, "alpha": 0.2, "m": 200, "reps": 4, "distance": "vertex",
                             "random_profile": {"n": 2}})");
    CHECK(to_csv(run_estimate(c)) == to_csv(run_estimate(c)));
    const Json conv = parse(R"({"seed": 5, "alpha": 0.25, "m_grid": [10, 100, 1000, 10000], "reps": 50,
                                "distance": "none", "profile": {"x": [0.3, 0.7], "y": [0.6, 0.4]}})");
    const ExperimentReport a = run_convergence(conv), b = run_convergence(conv);
    CHECK(to_csv(a) == to_csv(b));
    CHECK(config_hash("convergence", conv) == config_hash("convergence", conv));
    CHECK(config_hash("convergence", conv) != config_hash("estimate", conv));
}

TEST_CASE("estimate bound column dominates the oracle") {
    const Json c = parse(R"({"seed": 2, "alpha": 0.0, "m": 5000, "reps": 5, "distance": "vertex",
                             "profile": {"x": [0.3, 0.7], "y": [0.6, 0.4]}})");
    const ExperimentReport r = run_estimate(c);
    const size_t match = column(r, "support_match"), holds = column(r, "bound_holds");
    for (const auto& row : r.rows) {
        CHECK(row[match] == "true");
        CHECK(row[holds] == "true");
    }
}

TEST_CASE("coverage") {
    const Json edge = parse(R"({"seed": 1, "n": 4, "m": 50, "delta": 1.0, "reps": 1000})");
    const ExperimentReport e = run_coverage(edge);
    CHECK(e.assertions_passed);
    CHECK(e.summary.at("bounds").at("l1_bound").get<double>() == l1_bound(4, 50, 1.0));

    const Json c = parse(R"({"seed": 1, "p": [0.25, 0.25, 0.25, 0.25], "m": 200, "delta": 0.1, "reps": 1000,
                             "beta": 0.5})");
    const ExperimentReport r = run_coverage(c);
    CHECK(r.assertions_passed);
    const Json& b = r.summary.at("bounds");
    CHECK(b.at("l1_bound").get<double>() == l1_bound(4, 200, 0.1));
    CHECK(b.at("subset_bernstein_bound").get<double>() == subset_bernstein_bound(4, 200, 0.1, 0.5));
    CHECK(b.at("missing_mass_deviation").get<double>() == missing_mass_bounds(4, 200, 0.1).deviation);
}

TEST_CASE("verify-lb and bounds defaults pass") {
    CHECK(run_verify_lb(parse(R"({"seed": 1})")).assertions_passed);
    CHECK(run_bounds(parse(R"({"seed": 1})")).assertions_passed);
}

TEST_CASE("config errors name the field") {
    auto message = [](const std::string& cmd, const char* cfg) -> std::string {
        try {
            run_command(cmd, Json::parse(cfg));
        } catch (const ConfigError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(message("estimate", R"({"m": 10, "profile": {"x": [1, 0], "y": [1, 0]}})").find("seed") != std::string::npos);
    CHECK(message("estimate", R"({"seed": 1, "m": 10})").find("profile") != std::string::npos);
    CHECK(message("estimate", R"({"seed": 1, "m": "lots", "profile": {"x": [1, 0], "y": [1, 0]}})").find("'m'") !=
          std::string::npos);
    CHECK(message("convergence", R"({"seed": 1, "m_grid": [10, 100], "reps": 50,
                                      "profile": {"x": [1, 0], "y": [1, 0]}})").find("m_grid") != std::string::npos);
    CHECK(message("convergence", R"({"seed": 1, "m_grid": [10, 100, 1000, 10000], "reps": 5,
                                      "profile": {"x": [1, 0], "y": [1, 0]}})").find("reps") != std::string::npos);
    CHECK(message("coverage", R"({"seed": 1, "n": 4, "m": 50, "delta": 0.1, "reps": 10})").find("reps") !=
          std::string::npos);
    CHECK(message("estimate", R"({"seed": 1, "m": 10, "distance": "grid",
                                   "profile": {"x": [1, 0, 0], "y": [1, 0, 0]}})").find("distance") != std::string::npos);
    CHECK(message("nonsense", R"({"seed": 1})").find("nonsense") != std::string::npos);
}

TEST_CASE("written reports") {
    const Json c = parse(R"({"seed": 4, "n": 2, "m": 20, "delta": 0.5, "reps": 1000})");
    const ExperimentReport r = run_coverage(c);
    const auto root = std::filesystem::temp_directory_path() / "payoffset-unit";
    std::filesystem::remove_all(root);
    const std::string dir = write_report(r, root.string());
    CHECK(dir.find("coverage-" + config_hash("coverage", r.config)) != std::string::npos);
    for (const char* f : {"config.json", "rows.csv", "summary.json"}) CHECK(std::filesystem::exists(dir + "/" + f));
    std::ifstream in(dir + "/rows.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == to_csv(r));
    std::filesystem::remove_all(root);
}

TEST_CASE("helpers") {
    CHECK(loglog_slope({1, 10, 100}, {1, 0.1, 0.01}) == doctest::Approx(-1.0));
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
}
