#include <doctest.h>

#include <sstream>

#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/report.hpp"
#include "legalsim/rng.hpp"

using namespace legalsim;
using namespace legalsim::report;

namespace {

ScoreCard card_with(EnvKind env, const std::map<std::string, double>& raw,
                    const std::string& id = "ep") {
  ScoreCard card;
  card.episode_id = id;
  card.env_kind = env;
  for (const auto& [metric, value] : raw) {
    card.metrics[metric] = value;
    card.normalized[metric] = metrics::normalize_metric(metric, value);
  }
  return card;
}

}  // namespace

TEST_CASE("aggregate of a single card reproduces its own values") {
  auto card = card_with(EnvKind::ComplaintDrafting, {{"FOR", 1.0}, {"DOC", 0.5}});
  auto per_env = aggregate({card});
  CHECK(per_env.at("CD").metrics.at("FOR").mean == 100.0);
  CHECK(per_env.at("CD").metrics.at("DOC").mean == 50.0);
  CHECK(per_env.at("CD").episodes == 1);
}

TEST_CASE("aggregate averages normalized values: FOR 1.0 and 0.6 give 80") {
  auto a = card_with(EnvKind::ComplaintDrafting, {{"FOR", 1.0}}, "a");
  auto b = card_with(EnvKind::ComplaintDrafting, {{"FOR", 0.6}}, "b");
  auto per_env = aggregate({a, b});
  CHECK(per_env.at("CD").metrics.at("FOR").mean == doctest::Approx(80.0));
}

TEST_CASE("metrics unavailable everywhere render as a dash with a count") {
  auto a = card_with(EnvKind::ComplaintDrafting, {{"FOR", 1.0}}, "a");
  a.unavailable["DOC"] = "judge offline";
  auto b = card_with(EnvKind::ComplaintDrafting, {{"FOR", 0.6}}, "b");
  b.unavailable["DOC"] = "judge offline";
  Report r = build_report({a, b});
  CHECK(r.per_env.at("CD").metrics.at("DOC").count == 0);
  CHECK(r.per_env.at("CD").metrics.at("DOC").unavailable == 2);
  auto md = render_markdown(r);
  CHECK(md.find("- (2 unavailable)") != std::string::npos);
}

TEST_CASE("overall score excludes VER") {
  std::vector<ScoreCard> cards;
  cards.push_back(card_with(EnvKind::KnowledgeQuestioning, {{"BIN", 0.5}, {"NBIN", 5.0}}));
  ScoreCard cr = card_with(EnvKind::CriminalCourt,
                           {{"PFS", 0.5}, {"CRI", 0.5}, {"REA", 5.5}, {"LAW", 0.5}});
  cr.metrics["VER"] = 0.0;
  cr.normalized["VER"] = 0.0;
  cards.push_back(cr);
  auto per_env = aggregate(cards);
  auto overall = overall_score(per_env);
  REQUIRE(overall.has_value());
  CHECK(*overall == doctest::Approx(50.0));  // every non-VER column sits at 50

  // perturbing VER leaves the overall untouched
  cards[1].normalized["VER"] = 88.0;
  CHECK(*overall_score(aggregate(cards)) == doctest::Approx(50.0));
}

TEST_CASE("overall score equals an independent recomputation") {
  Rng rng(17);
  std::vector<ScoreCard> cards;
  for (int i = 0; i < 30; ++i) {
    EnvKind env = all_env_kinds()[rng.next_below(6)];
    ScoreCard card;
    card.episode_id = "ep" + std::to_string(i);
    card.env_kind = env;
    for (const auto& metric : metrics_for_env(env)) {
      double normalized = static_cast<double>(rng.next_below(10001)) / 100.0;
      card.normalized[metric] = normalized;
      card.metrics[metric] = metric == "VER" ? normalized / 100.0 * metrics::kDefaultVerCap
                                             : normalized;  // raw values unused by aggregation
    }
    cards.push_back(std::move(card));
  }
  auto per_env = aggregate(cards);
  auto overall = overall_score(per_env);

  // independent recomputation straight from the cards
  std::map<std::string, std::map<std::string, std::pair<double, int>>> sums;
  for (const auto& card : cards)
    for (const auto& [metric, value] : card.normalized) {
      auto& slot = sums[to_code(card.env_kind)][metric];
      slot.first += value;
      slot.second += 1;
    }
  double total = 0.0;
  int n = 0;
  for (const auto& [env, metrics_map] : sums)
    for (const auto& [metric, slot] : metrics_map) {
      if (metric == "VER") continue;
      total += slot.first / slot.second;
      ++n;
    }
  REQUIRE(overall.has_value());
  CHECK(std::fabs(*overall - total / n) < 1e-9);
}

TEST_CASE("completion rates are cumulative and monotone non-increasing") {
  const auto& procedure = procedures::civil_court();
  auto flags = [&](std::vector<int> complete) {
    ScoreCard card;
    card.episode_id = "ep";
    card.env_kind = EnvKind::CivilCourt;
    for (std::size_t s = 0; s < procedure.stages.size(); ++s)
      card.sub_scores["stage." + procedure.stages[s].stage_id] =
          complete[s] ? 1.0 : 0.0;
    return card;
  };

  // all five stages complete in both episodes
  auto all = completion_rate({flags({1, 1, 1, 1, 1}), flags({1, 1, 1, 1, 1})}, procedure);
  for (const auto& [stage, rate] : all) CHECK(rate == 1.0);

  // half the episodes fail at preparation: later stages can never exceed it
  auto half = completion_rate({flags({0, 1, 1, 1, 1}), flags({1, 1, 1, 1, 1})}, procedure);
  CHECK(half[0].second == doctest::Approx(0.5));
  for (const auto& [stage, rate] : half) CHECK(rate <= 0.5 + 1e-12);

  // hand-counted mixed set
  std::vector<ScoreCard> mixed = {flags({1, 1, 0, 1, 1}), flags({1, 0, 0, 0, 0}),
                                  flags({1, 1, 1, 1, 0}), flags({0, 0, 0, 0, 0})};
  auto rates = completion_rate(mixed, procedure);
  CHECK(rates[0].second == doctest::Approx(3.0 / 4.0));
  CHECK(rates[1].second == doctest::Approx(2.0 / 4.0));
  CHECK(rates[2].second == doctest::Approx(1.0 / 4.0));
  CHECK(rates[3].second == doctest::Approx(1.0 / 4.0));
  CHECK(rates[4].second == doctest::Approx(0.0));
}

TEST_CASE("completion rates stay monotone over random card sets") {
  const auto& procedure = procedures::criminal_court();
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScoreCard> cards;
    int n = 1 + static_cast<int>(rng.next_below(8));
    for (int i = 0; i < n; ++i) {
      ScoreCard card;
      card.episode_id = "ep" + std::to_string(i);
      card.env_kind = EnvKind::CriminalCourt;
      for (const auto& stage : procedure.stages)
        card.sub_scores["stage." + stage.stage_id] = rng.next_below(2) ? 1.0 : 0.0;
      cards.push_back(std::move(card));
    }
    auto rates = completion_rate(cards, procedure);
    for (std::size_t s = 1; s < rates.size(); ++s) CHECK(rates[s].second <= rates[s - 1].second);
  }
}

TEST_CASE("markdown rendering lists one row per environment metric") {
  std::vector<ScoreCard> cards = {
      card_with(EnvKind::KnowledgeQuestioning, {{"BIN", 1.0}, {"NBIN", 10.0}}),
      card_with(EnvKind::CriminalCourt,
                {{"PFS", 1.0}, {"CRI", 1.0}, {"VER", 0.0}, {"REA", 10.0}, {"LAW", 1.0}})};
  Report r = build_report(cards);
  auto md = render_markdown(r);
  // 2 (KQ) + 5 (CR) metric rows in the main table (stage table excluded)
  auto table = md.substr(0, md.find("## Stage completion"));
  std::size_t rows = 0, pos = 0;
  while ((pos = table.find("\n| KQ | ", pos)) != std::string::npos) { ++rows; ++pos; }
  pos = 0;
  while ((pos = table.find("\n| CR | ", pos)) != std::string::npos) { ++rows; ++pos; }
  CHECK(rows == 7);
  CHECK(md.find("VER (lower is better)") != std::string::npos);
}

TEST_CASE("CSV rendering reparses to the same numbers") {
  std::vector<ScoreCard> cards = {
      card_with(EnvKind::ComplaintDrafting, {{"FOR", 0.25}, {"DOC", 0.75}})};
  auto csv = render_csv(build_report(cards));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  bool saw_for = false;
  while (std::getline(in, line)) {
    if (line.find("CD,FOR,") == 0) {
      CHECK(line.find("25.00") != std::string::npos);
      saw_for = true;
    }
  }
  CHECK(saw_for);
}

TEST_CASE("JSON rendering round-trips through the parser") {
  std::vector<ScoreCard> cards = {
      card_with(EnvKind::DefenceDrafting, {{"FOR", 0.5}, {"DOC", 0.5}})};
  auto text = render_json_text(build_report(cards));
  auto j = parse_json(text);
  CHECK(j["environments"]["DD"]["FOR"]["mean"].get<double>() == doctest::Approx(50.0));
  CHECK(j["partial"].get<bool>() == true);  // five environments missing
}

TEST_CASE("partial reports name the missing environments") {
  auto card = card_with(EnvKind::KnowledgeQuestioning, {{"BIN", 1.0}});
  Report r = build_report({card});
  CHECK(r.partial);
  CHECK(r.missing_envs.size() == 5);
}

TEST_CASE("aggregate requires at least one card") {
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}
