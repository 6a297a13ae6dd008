#include <doctest.h>

#include <filesystem>

#include "legalsim/corpus.hpp"
#include "legalsim/json_io.hpp"
#include "legalsim/runner.hpp"

using namespace legalsim;
using namespace legalsim::runner;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("legalsim_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

class AlwaysFailingBackend : public ChatBackend {
 public:
  std::string chat(const std::vector<ChatMessage>&) override {
    throw BackendError("synthetic outage");
  }
};

BackendSet scripted_backends(const std::vector<EpisodeConfig>& configs,
                             corpus::CastScripts (*builder)(const EpisodeConfig&)) {
  auto library =
      std::make_shared<corpus::ScriptLibrary>(corpus::library_for(configs, builder));
  BackendSet backends;
  backends.agent = [library](const EpisodeConfig& c, const std::string& r) {
    return library->make_backend(c, r);
  };
  backends.environment = backends.agent;
  backends.judge = std::make_shared<HeuristicJudge>();
  return backends;
}

EpisodeConfig config_for(EnvKind kind, std::uint64_t seed = 7) {
  for (auto& c : corpus::synth_fixtures(seed, 1))
    if (c.env_kind == kind) return c;
  throw std::logic_error("missing fixture");
}

TopicList three_topics() {
  TopicList topics;
  topics.theme = "renting";
  topics.occupation = "shop clerk";
  topics.topics = {
      {"t1", TopicKind::Binary, "May the landlord keep the deposit without cause?", "no",
       GroundTruthKind::YesNo},
      {"t2", TopicKind::Binary, "Can rent be raised mid-lease?", "conditional",
       GroundTruthKind::YesNo},
      {"t3", TopicKind::OpenEnded, "Which provision governs lease termination?",
       "Civil Code Article 722", GroundTruthKind::LegalProvision},
  };
  return topics;
}

}  // namespace

TEST_CASE("a fully scripted KQ episode with three topics completes in six turns") {
  auto config = corpus::build_episode(three_topics(), EnvKind::KnowledgeQuestioning, 1);
  std::vector<EpisodeConfig> configs{config};
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  TempDir dir("kq");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto transcript = run_episode(config, backends, options);
  CHECK(transcript.termination == Termination::Completed);
  CHECK(transcript.turns.size() == 6);  // one question + one answer per topic
  CHECK(transcript.turns[0].speaker == "public");
  CHECK(transcript.turns[1].speaker == "agent");
}

TEST_CASE("a scripted civil court run completes with a judgment artifact") {
  auto config = config_for(EnvKind::CivilCourt);
  std::vector<EpisodeConfig> configs{config};
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  TempDir dir("ci");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto transcript = run_episode(config, backends, options);
  CHECK(transcript.termination == Termination::Completed);
  REQUIRE(std::holds_alternative<StructuredJudgment>(transcript.terminal_artifact));
  const auto& judgment = std::get<StructuredJudgment>(transcript.terminal_artifact);
  const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
  CHECK(std::get<CivilJudgment>(judgment.body).ruling_text == truth.court_judgment);
  CHECK(transcript.turns.front().speaker == "judge");
}

TEST_CASE("backend errors persist a partial transcript before returning") {
  auto config = config_for(EnvKind::ComplaintDrafting);
  BackendSet backends;
  backends.agent = shared_backend(std::make_shared<AlwaysFailingBackend>());
  backends.environment = backends.agent;
  backends.judge = std::make_shared<HeuristicJudge>();
  TempDir dir("errs");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto transcript = run_episode(config, backends, options);
  CHECK(transcript.termination == Termination::BackendError);
  CHECK(transcript.turns.empty());
  auto on_disk =
      parse_transcript(read_text_file((dir.path / transcript_rel_path(config)).string()));
  CHECK(on_disk.termination == Termination::BackendError);
}

TEST_CASE("identical scripted runs produce byte-identical transcripts") {
  auto configs = corpus::synth_fixtures(21, 2);
  REQUIRE(configs.size() == 12);
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  TempDir a("det_a"), b("det_b");
  RunnerOptions oa, ob;
  oa.out_dir = a.path.string();
  ob.out_dir = b.path.string();
  auto summary = run_batch(configs, backends, oa, 4, false);
  CHECK(summary.completed == 12);
  // fresh script states, different parallelism: bytes must not move
  auto backends2 = scripted_backends(configs, corpus::perfect_cast_scripts);
  run_batch(configs, backends2, ob, 1, false);
  for (const auto& config : configs) {
    auto ta = read_text_file((a.path / transcript_rel_path(config)).string());
    auto tb = read_text_file((b.path / transcript_rel_path(config)).string());
    CHECK(ta == tb);
  }
  CHECK(read_text_file((a.path / "manifest.json").string()) ==
        read_text_file((b.path / "manifest.json").string()));
}

TEST_CASE("run_batch counts terminations and never aborts on failures") {
  auto configs = corpus::synth_fixtures(33, 1);
  REQUIRE(configs.size() == 6);
  // agent fails only for one episode id
  auto library = std::make_shared<corpus::ScriptLibrary>(
      corpus::library_for(configs, corpus::perfect_cast_scripts));
  const std::string doomed = configs[2].episode_id;
  BackendSet backends;
  backends.agent = [library, doomed](const EpisodeConfig& c, const std::string& r)
      -> ChatBackendPtr {
    if (c.episode_id == doomed) return std::make_shared<AlwaysFailingBackend>();
    return library->make_backend(c, r);
  };
  backends.environment = [library](const EpisodeConfig& c, const std::string& r) {
    return library->make_backend(c, r);
  };
  backends.judge = std::make_shared<HeuristicJudge>();

  TempDir dir("batch");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto summary = run_batch(configs, backends, options, 4, false);
  CHECK(summary.completed == 5);
  CHECK(summary.backend_errors == 1);
  CHECK(summary.skipped == 0);
}

TEST_CASE("resume skips completed episodes and reruns the rest") {
  auto configs = corpus::synth_fixtures(44, 1);
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  TempDir dir("resume");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto first = run_batch(configs, backends, options, 2, false);
  CHECK(first.completed == 6);

  auto backends2 = scripted_backends(configs, corpus::perfect_cast_scripts);
  auto second = run_batch(configs, backends2, options, 2, true);
  CHECK(second.skipped == 6);
  CHECK(second.executed() == 0);

  // a changed config hash forces a rerun
  auto changed = configs;
  changed[0].max_turns += 1;
  auto backends3 = scripted_backends(changed, corpus::perfect_cast_scripts);
  auto third = run_batch(changed, backends3, options, 1, true);
  CHECK(third.skipped == 5);
  CHECK(third.completed == 1);
}

TEST_CASE("no transcript ever exceeds its environment's turn cap") {
  auto configs = corpus::synth_fixtures(55, 1);
  auto backends = scripted_backends(configs, corpus::stalling_cast_scripts);
  TempDir dir("caps");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  for (const auto& config : configs) {
    auto transcript = run_episode(config, backends, options);
    CHECK(transcript.termination == Termination::MaxTurnsExceeded);
    CHECK(static_cast<int>(transcript.turns.size()) == config.max_turns);
  }
}

TEST_CASE("turn streams land beside the transcript as JSONL") {
  auto config = config_for(EnvKind::DefenceDrafting, 66);
  std::vector<EpisodeConfig> configs{config};
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  TempDir dir("jsonl");
  RunnerOptions options;
  options.out_dir = dir.path.string();
  auto transcript = run_episode(config, backends, options);
  auto stream = read_text_file((dir.path / turns_rel_path(config)).string());
  std::size_t lines = std::count(stream.begin(), stream.end(), '\n');
  CHECK(lines == transcript.turns.size());
  // each line parses as a turn
  auto first_line = stream.substr(0, stream.find('\n'));
  auto j = parse_json(first_line);
  CHECK(turn_from_json(JsonReader(j)) == transcript.turns[0]);
}

TEST_CASE("deterministic default clock stamps turns with their index") {
  auto config = config_for(EnvKind::ComplaintDrafting, 77);
  std::vector<EpisodeConfig> configs{config};
  auto backends = scripted_backends(configs, corpus::perfect_cast_scripts);
  RunnerOptions options;  // no out_dir: nothing persisted
  auto transcript = run_episode(config, backends, options);
  for (std::size_t i = 0; i < transcript.turns.size(); ++i)
    CHECK(transcript.turns[i].timestamp_ms == static_cast<std::int64_t>(i));
}
