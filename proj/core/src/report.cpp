#include "legalsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "legalsim/json_io.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/text.hpp"

namespace legalsim::report {

std::map<std::string, EnvAggregate> aggregate(const std::vector<ScoreCard>& cards) {
  if (cards.empty()) throw std::invalid_argument("aggregate requires at least one score card");
  std::map<std::string, EnvAggregate> per_env;
  std::map<std::string, std::map<std::string, double>> sums;
  for (const auto& card : cards) {
    std::string env = to_code(card.env_kind);
    auto& agg = per_env[env];
    agg.env_kind = card.env_kind;
    ++agg.episodes;
    for (const auto& metric : metrics_for_env(card.env_kind)) {
      auto it = card.normalized.find(metric);
      if (it != card.normalized.end()) {
        sums[env][metric] += it->second;
        ++agg.metrics[metric].count;
      } else {
        ++agg.metrics[metric].unavailable;
      }
    }
  }
  for (auto& [env, agg] : per_env)
    for (auto& [metric, m] : agg.metrics)
      if (m.count > 0) m.mean = sums[env][metric] / m.count;
  return per_env;
}

std::optional<double> overall_score(const std::map<std::string, EnvAggregate>& per_env) {
  double sum = 0.0;
  int n = 0;
  for (const auto& [env, agg] : per_env) {
    for (const auto& [metric, m] : agg.metrics) {
      if (metric == "VER") continue;  // lower-is-better deviation stays out of the average
      if (m.count == 0) continue;
      sum += m.mean;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::vector<std::pair<std::string, double>> completion_rate(const std::vector<ScoreCard>& cards,
                                                            const ProcedureSpec& procedure) {
  std::vector<std::pair<std::string, double>> rates;
  int total = 0;
  std::vector<int> reached(procedure.stages.size(), 0);
  for (const auto& card : cards) {
    if (card.env_kind != procedure.env_kind) continue;
    ++total;
    // An episode reaches stage k when every flag up to k is complete.
    bool alive = true;
    for (std::size_t s = 0; s < procedure.stages.size(); ++s) {
      auto it = card.sub_scores.find("stage." + procedure.stages[s].stage_id);
      bool complete = it != card.sub_scores.end() && it->second >= 1.0;
      alive = alive && complete;
      if (alive) ++reached[s];
    }
  }
  for (std::size_t s = 0; s < procedure.stages.size(); ++s) {
    double rate = total == 0 ? 0.0 : static_cast<double>(reached[s]) / total;
    rates.emplace_back(procedure.stages[s].stage_id, rate);
  }
  return rates;
}

Report build_report(const std::vector<ScoreCard>& cards) {
  Report r;
  r.per_env = aggregate(cards);
  r.overall = overall_score(r.per_env);
  for (EnvKind kind : all_env_kinds()) {
    if (!r.per_env.count(to_code(kind))) {
      r.partial = true;
      r.missing_envs.push_back(to_code(kind));
    }
  }
  for (EnvKind kind : {EnvKind::CivilCourt, EnvKind::CriminalCourt}) {
    if (!r.per_env.count(to_code(kind))) continue;
    r.completion[to_code(kind)] =
        completion_rate(cards, procedures::default_procedure(kind));
  }
  // behavioral-consistency ratings ride along as sub-scores
  std::map<std::string, double> sums;
  for (const auto& card : cards) {
    for (const auto& [key, value] : card.sub_scores) {
      if (!text::starts_with(key, "consistency.")) continue;
      std::string role = key.substr(std::string("consistency.").size());
      sums[role] += (value - 1.0) / 9.0 * 100.0;  // [1,10] -> [0,100]
      ++r.consistency[role].count;
    }
  }
  for (auto& [role, agg] : r.consistency) agg.mean = sums[role] / agg.count;
  return r;
}

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(2);
  ss << v;
  return ss.str();
}

// env code, metric columns in declared order
std::vector<std::pair<std::string, std::vector<std::string>>> column_layout(const Report& r) {
  std::vector<std::pair<std::string, std::vector<std::string>>> layout;
  for (EnvKind kind : all_env_kinds()) {
    std::string code = to_code(kind);
    if (!r.per_env.count(code)) continue;
    layout.emplace_back(code, metrics_for_env(kind));
  }
  return layout;
}

std::string cell(const EnvAggregate& agg, const std::string& metric) {
  auto it = agg.metrics.find(metric);
  if (it == agg.metrics.end()) return "-";
  if (it->second.count == 0)
    return "- (" + std::to_string(it->second.unavailable) + " unavailable)";
  return fmt(it->second.mean);
}

}  // namespace

std::string render_markdown(const Report& r) {
  std::ostringstream out;
  out << "# Evaluation report\n\n";
  out << "| env | metric | mean | episodes | unavailable |\n";
  out << "| --- | --- | --- | --- | --- |\n";
  for (const auto& [env, metrics] : column_layout(r)) {
    const auto& agg = r.per_env.at(env);
    for (const auto& metric : metrics) {
      std::string name = metric == "VER" ? "VER (lower is better)" : metric;
      auto it = agg.metrics.find(metric);
      int unavailable = it == agg.metrics.end() ? 0 : it->second.unavailable;
      out << "| " << env << " | " << name << " | " << cell(agg, metric) << " | " << agg.episodes
          << " | " << unavailable << " |\n";
    }
  }
  out << "\n";
  if (r.overall)
    out << "Overall score (VER excluded): **" << fmt(*r.overall) << "**"
        << (r.partial ? " (partial: missing " + text::join(r.missing_envs, ", ") + ")" : "")
        << "\n";
  if (!r.completion.empty()) {
    out << "\n## Stage completion\n\n| env | stage | rate |\n| --- | --- | --- |\n";
    for (const auto& [env, rates] : r.completion)
      for (const auto& [stage, rate] : rates)
        out << "| " << env << " | " << stage << " | " << fmt(rate * 100.0) << "% |\n";
  }
  if (!r.consistency.empty()) {
    out << "\n## Behavioral consistency\n\n| role | mean | episodes |\n| --- | --- | --- |\n";
    for (const auto& [role, agg] : r.consistency)
      out << "| " << role << " | " << fmt(agg.mean) << " | " << agg.count << " |\n";
  }
  return out.str();
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  out << "env,metric,mean,episodes,unavailable\n";
  for (const auto& [env, metrics] : column_layout(r)) {
    const auto& agg = r.per_env.at(env);
    for (const auto& metric : metrics) {
      auto it = agg.metrics.find(metric);
      int unavailable = it == agg.metrics.end() ? 0 : it->second.unavailable;
      std::string value = it == agg.metrics.end() || it->second.count == 0 ? "" : fmt(it->second.mean);
      out << env << "," << metric << "," << value << "," << agg.episodes << "," << unavailable
          << "\n";
    }
  }
  if (r.overall) out << "overall,ALL_BUT_VER," << fmt(*r.overall) << ",," << "\n";
  return out.str();
}

std::string render_json_text(const Report& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json envs = Json::object();
  for (const auto& [env, metrics] : column_layout(r)) {
    const auto& agg = r.per_env.at(env);
    Json m = Json::object();
    for (const auto& metric : metrics) {
      auto it = agg.metrics.find(metric);
      Json entry{{"episodes", agg.episodes}};
      if (it != agg.metrics.end() && it->second.count > 0) entry["mean"] = it->second.mean;
      entry["unavailable"] = it == agg.metrics.end() ? 0 : it->second.unavailable;
      if (metric == "VER") entry["note"] = "lower is better";
      m[metric] = std::move(entry);
    }
    envs[env] = std::move(m);
  }
  j["environments"] = std::move(envs);
  if (r.overall) j["overall_excluding_ver"] = *r.overall;
  j["partial"] = r.partial;
  if (!r.missing_envs.empty()) j["missing_envs"] = r.missing_envs;
  if (!r.completion.empty()) {
    Json c = Json::object();
    for (const auto& [env, rates] : r.completion) {
      Json stages = Json::array();
      for (const auto& [stage, rate] : rates)
        stages.push_back(Json{{"stage", stage}, {"rate", rate}});
      c[env] = std::move(stages);
    }
    j["stage_completion"] = std::move(c);
  }
  if (!r.consistency.empty()) {
    Json c = Json::object();
    for (const auto& [role, agg] : r.consistency)
      c[role] = Json{{"mean", agg.mean}, {"episodes", agg.count}};
    j["consistency"] = std::move(c);
  }
  return dump_canonical(j);
}

void render(const Report& r, const std::string& format, const std::string& out_dir) {
  if (format == "markdown") {
    write_text_file(out_dir + "/report.md", render_markdown(r));
  } else if (format == "csv") {
    write_text_file(out_dir + "/report.csv", render_csv(r));
  } else if (format == "json") {
    write_text_file(out_dir + "/report.json", render_json_text(r));
  } else {
    throw std::invalid_argument("unknown report format '" + format + "'");
  }
}

}  // namespace legalsim::report
