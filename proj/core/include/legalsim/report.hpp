#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "legalsim/domain.hpp"

namespace legalsim::report {

struct MetricAggregate {
  double mean = 0.0;  // of normalized values, [0,100]
  int count = 0;      // episodes contributing
  int unavailable = 0;
};

struct EnvAggregate {
  EnvKind env_kind = EnvKind::KnowledgeQuestioning;
  int episodes = 0;
  std::map<std::string, MetricAggregate> metrics;
};

struct Report {
  std::map<std::string, EnvAggregate> per_env;  // key: env code
  std::optional<double> overall;                // absent when no metric aggregated
  bool partial = false;                         // true when an environment is missing
  std::vector<std::string> missing_envs;
  // stage id -> fraction of court episodes completing stages up to it
  std::map<std::string, std::vector<std::pair<std::string, double>>> completion;  // env code -> rates
  std::map<std::string, MetricAggregate> consistency;  // role_id -> mean rating
};

// Per-environment means of each metric's normalized value; unavailable
// metrics are excluded from the mean and counted.
std::map<std::string, EnvAggregate> aggregate(const std::vector<ScoreCard>& cards);

// Unweighted mean over every (environment, metric) normalized mean except
// VER. All six environments are expected; missing ones flag the score as
// partial.
std::optional<double> overall_score(const std::map<std::string, EnvAggregate>& per_env);

// Fraction of episodes whose stage flags are complete for every stage up
// to and including each stage, in procedure order. Monotone non-increasing
// by construction.
std::vector<std::pair<std::string, double>> completion_rate(const std::vector<ScoreCard>& cards,
                                                            const ProcedureSpec& procedure);

Report build_report(const std::vector<ScoreCard>& cards);

// Renders report.md / report.csv / report.json (any subset by format:
// "markdown", "csv", "json"). Column order is deterministic; the VER
// column is annotated since lower means better.
void render(const Report& report, const std::string& format, const std::string& out_dir);

std::string render_markdown(const Report& report);
std::string render_csv(const Report& report);
std::string render_json_text(const Report& report);

}  // namespace legalsim::report
