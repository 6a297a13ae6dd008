#include <doctest.h>

#include <filesystem>
#include <set>

#include "legalsim/corpus.hpp"
#include "legalsim/envs.hpp"
#include "legalsim/json_io.hpp"

using namespace legalsim;
using namespace legalsim::corpus;

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("legalsim_corpus_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string civil_record_text() {
  auto configs = synth_fixtures(3, 1);
  for (const auto& c : configs)
    if (c.env_kind == EnvKind::ComplaintDrafting) {
      Json j{{"schema_version", kSchemaVersion},
             {"kind", "civil_case"},
             {"value", to_json(std::get<CivilCaseElements>(c.ground_truth))}};
      return dump_canonical(j);
    }
  return {};
}

// every ground-truth string long enough to be meaningful
std::vector<std::string> ground_truth_strings(const EpisodeConfig& config) {
  std::vector<std::string> out;
  if (auto* topics = std::get_if<TopicList>(&config.ground_truth)) {
    for (const auto& t : topics->topics)
      if (t.ground_truth.size() >= 8) out.push_back(t.ground_truth);
  } else if (auto* civ = std::get_if<CivilCaseElements>(&config.ground_truth)) {
    out.push_back(civ->court_judgment);
    out.push_back(civ->court_findings);
    for (const auto& l : civ->applied_laws) out.push_back(l);
  } else {
    const auto& cr = std::get<CriminalCaseElements>(config.ground_truth);
    out.push_back(cr.court_findings);
    for (const auto& l : cr.applied_laws) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST_CASE("load_elements reads a fixture directory and reports rejects") {
  TempDir dir("load");
  for (int i = 0; i < 4; ++i)
    write_text_file((dir.path / ("rec" + std::to_string(i) + ".json")).string(),
                    civil_record_text());
  write_text_file((dir.path / "broken.json").string(), "{\"kind\":\"civil_case\"}");
  auto report = load_elements(dir.path.string());
  CHECK(report.records.size() == 4);
  REQUIRE(report.rejects.size() == 1);
  CHECK(report.rejects.count("broken.json") == 1);
}

TEST_CASE("load_elements on an empty directory yields an empty collection") {
  TempDir dir("empty");
  auto report = load_elements(dir.path.string());
  CHECK(report.records.empty());
  CHECK(report.rejects.empty());
}

TEST_CASE("extract_elements parses a valid reply") {
  ScriptedBackend backend({{".*", "Sure, here you go: " + civil_record_text()}}, "huh");
  auto result = extract_elements("raw judgment text", RawDocKind::CivilJudgmentDocument, backend);
  REQUIRE(result.record.has_value());
  CHECK(std::holds_alternative<CivilCaseElements>(*result.record));
}

TEST_CASE("extract_elements rejects prose after one reprompt") {
  ScriptedBackend backend({}, "I cannot answer that.");
  auto result = extract_elements("raw text", RawDocKind::LegalArticle, backend);
  CHECK(!result.record.has_value());
  CHECK(result.error.find("reprompt") != std::string::npos);
}

TEST_CASE("extract_elements accepts a fixed reply on the reprompt") {
  ScriptedBackend backend({{".*", "not json"}, {".*", civil_record_text()}}, "x");
  auto result = extract_elements("raw text", RawDocKind::CivilJudgmentDocument, backend);
  CHECK(result.record.has_value());
}

TEST_CASE("build_episode hides ground truth from every payload") {
  auto configs = synth_fixtures(7, 2);
  REQUIRE(configs.size() == 12);
  for (const auto& config : configs) {
    auto truths = ground_truth_strings(config);
    for (const auto& [role_id, profile] : config.participants) {
      auto payload_dump = to_json(profile.payload).dump();
      for (const char* field :
           {"court_judgment", "court_findings", "applied_laws", "verdict_crime",
            "verdict_sentence_months", "verdict_fine_amount"})
        CHECK(payload_dump.find(field) == std::string::npos);
      for (const auto& value : truths) {
        std::string escaped = Json(value).dump();
        escaped = escaped.substr(1, escaped.size() - 2);  // strip the quotes
        CHECK(payload_dump.find(escaped) == std::string::npos);
      }
    }
  }
}

TEST_CASE("build_episode produces the required cast with valid profiles") {
  auto configs = synth_fixtures(7, 2);
  for (const auto& config : configs) {
    CHECK(envs::validate_config(config).empty());
    for (const auto& [id, profile] : config.participants)
      CHECK(validate_profile(profile).empty());
  }
}

TEST_CASE("CD plaintiff payloads carry the case slice, not the answer key") {
  auto configs = synth_fixtures(5, 1);
  for (const auto& config : configs) {
    if (config.env_kind != EnvKind::ComplaintDrafting) continue;
    const auto& plaintiff = config.participants.at("plaintiff");
    const auto& payload = std::get<CivilPartyPayload>(plaintiff.payload);
    const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
    CHECK(payload.claims == truth.claims);
    CHECK(payload.defendant == truth.defendant);
    CHECK(payload.plaintiff_evidence == truth.plaintiff_evidence);
    CHECK(plaintiff.attributes == truth.plaintiff);
    CHECK(plaintiff.traits.has_value());
    CHECK(plaintiff.behavioral_style.has_value());
  }
}

TEST_CASE("criminal court episodes seat four participants") {
  auto configs = synth_fixtures(5, 1);
  for (const auto& config : configs) {
    if (config.env_kind != EnvKind::CriminalCourt) continue;
    CHECK(config.participants.size() == 4);
    CHECK(config.participants.count("judge") == 1);
    CHECK(config.participants.count("procurator") == 1);
    // the judge (agent under test) carries no payload
    CHECK(std::holds_alternative<std::monostate>(config.participants.at("judge").payload));
  }
}

TEST_CASE("KQ configs derive the public persona from the record's occupation") {
  TopicList topics;
  topics.theme = "theme";
  topics.occupation = "warehouse keeper";
  topics.topics = {{"t1", TopicKind::Binary, "q?", "yes", GroundTruthKind::YesNo}};
  auto a = build_episode(topics, EnvKind::KnowledgeQuestioning, 9);
  auto b = build_episode(topics, EnvKind::KnowledgeQuestioning, 9);
  CHECK(a == b);  // deterministic given (elements, env, seed)
  const auto& pub = a.participants.at("public");
  CHECK(pub.traits.has_value());
  CHECK(!pub.behavioral_style->empty());

  TopicList other = topics;
  other.occupation = "school teacher";
  auto c = build_episode(other, EnvKind::KnowledgeQuestioning, 9);
  // the persona context feeds the trait stream
  CHECK((!(c.participants.at("public").traits == pub.traits) ||
         c.participants.at("public").behavioral_style != pub.behavioral_style));
}

TEST_CASE("synth_fixtures is deterministic per seed and honors counts") {
  auto a = synth_fixtures(7, 2);
  auto b = synth_fixtures(7, 2);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);

  auto c = synth_fixtures(8, 2);
  bool any_diff = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i)
    if (!(a[i] == c[i])) any_diff = true;
  CHECK(any_diff);

  std::map<EnvKind, int> counts;
  counts[EnvKind::KnowledgeQuestioning] = 3;
  counts[EnvKind::CriminalCourt] = 1;
  auto d = synth_fixtures(7, counts);
  CHECK(d.size() == 4);
}

TEST_CASE("script library round-trips and builds per-episode backends") {
  auto configs = synth_fixtures(7, 1);
  auto lib = library_for(configs, perfect_cast_scripts);
  auto text = lib.to_json_text();
  auto reloaded = ScriptLibrary::from_json_text(text);
  CHECK(reloaded.to_json_text() == text);

  const auto& config = configs.front();
  auto backend = reloaded.make_backend(config, config.participants.begin()->first);
  CHECK(!backend->chat({{ChatRole::System, "s"}, {ChatRole::User, "hello"}}).empty());

  // unknown roles stall on the fallback default
  auto fallback = reloaded.make_backend(config, "nobody");
  CHECK(fallback->chat({{ChatRole::System, "s"}, {ChatRole::User, "x"}}) == "...");
}

TEST_CASE("shipped fixture configs match the generator output byte for byte") {
  std::string root(LEGALSIM_SOURCE_DIR);
  auto configs = synth_fixtures(7, 2);
  for (const auto& config : configs) {
    auto path = root + "/fixtures/configs/" + config.episode_id + ".json";
    REQUIRE(fs::exists(path));
    CHECK(read_text_file(path) == dump_canonical(to_json(config)));
  }
  auto perfect = library_for(configs, perfect_cast_scripts);
  CHECK(read_text_file(root + "/fixtures/scripts/perfect.json") == perfect.to_json_text());
}

TEST_CASE("regex_escape neutralizes pattern metacharacters") {
  CHECK(regex_escape("[topic:t1]") == "\\[topic:t1\\]");
  CHECK(regex_escape("a+b(c)") == "a\\+b\\(c\\)");
}
