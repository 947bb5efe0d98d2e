//==============================================================================
// experiments.hpp — scripted quantitative experiments with machine-checkable
// verdicts: the truncation-vs-ball-average identity, the empirical pointwise
// constants, the closed-form counterexample growth for the odd 1-D kernel,
// the L^2 failure trend near a vanishing symbol, and a survey tying the
// division/invertibility condition to observed behavior.
//
// Every threshold lives in the config (defaults compiled in); a report is a
// deterministic function of config + seeds.  Reports serialize to structured
// text plus CSV series, named <id>.<config-hash>.report / .csv.
//==============================================================================
#pragma once

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace czsi {

/// Config-shape problems (unknown id, bad key, unresolvable kernel): thrown
/// before any computation starts; the command line maps them to exit 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Verdict { pass, fail, informational };
std::string verdict_name(Verdict v);

struct MetricSeries {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string id;
  nlohmann::json config;      // the fully merged config this run used
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<MetricSeries> series;
  Verdict verdict = Verdict::fail;
  std::vector<std::string> notes;
  std::string timestamp;      // excluded from hashing and determinism checks

  std::string config_hash() const;  // 16 hex digits, FNV-1a over the config
  std::string text() const;         // structured text payload
  std::string csv() const;          // all series, blank-line separated
};

std::uint64_t fnv1a64(const std::string& bytes);

/// Known experiment ids:
///   mean-value, pointwise, hilbert-counterexample, l2-failure,
///   condition-survey
std::vector<std::string> experiment_ids();

/// Compiled-in defaults for one experiment (throws ConfigError on unknown id).
nlohmann::json default_config(const std::string& id);

/// Merge overrides onto the defaults (top-level keys; unknown keys rejected)
/// and dispatch.
Report run_experiment(const std::string& id, const nlohmann::json& overrides);

Report exp_mean_value(const nlohmann::json& config);
Report exp_pointwise(const nlohmann::json& config);
Report exp_hilbert_counterexample(const nlohmann::json& config);
Report exp_l2_failure(const nlohmann::json& config);
Report exp_condition_survey(const nlohmann::json& config);

/// Write <id>.<hash>.report and, when series exist, <id>.<hash>.csv into
/// out_dir (atomic write-then-rename).  Returns the report file path.
std::string write_report(const Report& report, const std::string& out_dir);

}  // namespace czsi
