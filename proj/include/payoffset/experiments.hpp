#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "payoffset/json_io.hpp"

namespace payoffset {

inline constexpr const char* kArtifactVersion = "1.0.0";
inline constexpr const char* kCsvSchema = "1";

// Invalid or missing config field; the message names the field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentReport {
    std::string command;
    Json config;  // validated config echo, seed included
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    Json summary = Json::object();
    Json artifacts = Json::object();  // extra JSON files keyed by name
    std::vector<std::string> warnings;
    bool assertions_passed = true;
    double wall_clock_s = 0.0;
};

// Each runner validates `config` (which must carry "seed") and is
// deterministic: identical configs give identical rows.
ExperimentReport run_estimate(const Json& config);
ExperimentReport run_convergence(const Json& config);
ExperimentReport run_coverage(const Json& config);
ExperimentReport run_verify_lb(const Json& config);
ExperimentReport run_bounds(const Json& config);
ExperimentReport run_command(const std::string& command, const Json& config);

std::string to_csv(const ExperimentReport& r);
// 16 hex digits of FNV-1a over the command and the canonical config dump.
std::string config_hash(const std::string& command, const Json& config);
// Writes config.json, rows.csv, summary.json and artifacts under
// <out_dir>/<command>-<hash>; returns that directory.
std::string write_report(const ExperimentReport& r, const std::string& out_dir);

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);
double median(std::vector<double> v);

}  // namespace payoffset
