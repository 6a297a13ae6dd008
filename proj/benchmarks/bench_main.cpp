#include <benchmark/benchmark.h>

#include "legalsim/corpus.hpp"
#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/rng.hpp"

using namespace legalsim;

namespace {

std::string sample_document(int labels) {
  const auto& tmpl = metrics::complaint_template();
  std::string doc;
  for (int i = 0; i < labels && i < static_cast<int>(tmpl.labels.size()); ++i)
    doc += tmpl.labels[i] + ": some section content with a fair number of words in it\n";
  return doc;
}

Transcript sample_court_transcript(int turns) {
  const auto& procedure = procedures::civil_court();
  std::vector<std::string> lines;
  for (const auto& stage : procedure.stages)
    for (const auto& action : stage.actions) lines.push_back(action.match_patterns.front());
  Transcript t;
  t.episode_id = "bench";
  t.env_kind = EnvKind::CivilCourt;
  Rng rng(1);
  for (int i = 0; i < turns; ++i) {
    Turn turn;
    turn.index = i;
    turn.speaker = i % 2 ? "plaintiff_lawyer" : "judge";
    turn.content = lines[rng.next_below(lines.size())] + " plus some surrounding chatter";
    t.turns.push_back(std::move(turn));
  }
  return t;
}

}  // namespace

static void BM_ScoreFor(benchmark::State& state) {
  auto doc = sample_document(static_cast<int>(state.range(0)));
  const auto& tmpl = metrics::complaint_template();
  for (auto _ : state) {
    auto s = metrics::score_for(doc, tmpl);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ScoreFor)->Arg(3)->Arg(5);

static void BM_ScorePfs(benchmark::State& state) {
  auto transcript = sample_court_transcript(static_cast<int>(state.range(0)));
  const auto& procedure = procedures::civil_court();
  for (auto _ : state) {
    auto s = metrics::score_pfs(transcript, procedure, "judge");
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ScorePfs)->Arg(10)->Arg(50);

static void BM_ScoreVer(benchmark::State& state) {
  CriminalCaseElements truth;
  truth.defendant.attributes.name = "X";
  truth.charges = {"theft"};
  truth.verdict_crime = "theft";
  truth.verdict_sentence_months = 35;
  truth.verdict_fine_amount = 2000;
  StructuredJudgment judgment;
  judgment.body = CriminalJudgment{"theft", 11, 1800, "r", {}};
  for (auto _ : state) {
    auto s = metrics::score_ver(judgment, truth);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_ScoreVer);

static void BM_ConfigRoundTrip(benchmark::State& state) {
  auto configs = corpus::synth_fixtures(3, 1);
  const auto& config = configs.front();
  for (auto _ : state) {
    auto text = dump_canonical(to_json(config));
    auto parsed = parse_episode_config(text);
    benchmark::DoNotOptimize(parsed);
  }
}
BENCHMARK(BM_ConfigRoundTrip);

static void BM_SynthFixtures(benchmark::State& state) {
  for (auto _ : state) {
    auto configs = corpus::synth_fixtures(7, 1);
    benchmark::DoNotOptimize(configs);
  }
}
BENCHMARK(BM_SynthFixtures);

BENCHMARK_MAIN();
