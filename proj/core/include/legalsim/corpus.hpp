#pragma once

#include <map>
#include <string>
#include <vector>

#include "legalsim/backend.hpp"
#include "legalsim/domain.hpp"
#include "legalsim/judge.hpp"

namespace legalsim::corpus {

// One source record: a topic list (Level I), a civil case (Level II / CI),
// or a criminal case (CR).
using SourceRecord = std::variant<TopicList, CivilCaseElements, CriminalCaseElements>;

struct LoadReport {
  std::vector<SourceRecord> records;
  std::map<std::string, std::string> rejects;  // file -> reason
};

// Loads every .json element file under the directory. Schema violations
// are collected per file; a bad record never aborts the load.
LoadReport load_elements(const std::string& dir);

// Canonical element-file form of one record.
std::string record_json_text(const SourceRecord& record);

enum class RawDocKind { CivilJudgmentDocument, CriminalJudgmentDocument, LegalArticle };

struct ExtractionResult {
  std::optional<SourceRecord> record;
  std::string error;  // set when rejected
};

// Prompts the extraction model to structure a raw source document into the
// element schema; invalid output gets one reprompt, then the document is
// rejected.
ExtractionResult extract_elements(const std::string& raw_document, RawDocKind kind,
                                  ChatBackend& backend);

// Instantiates an episode from a source record: required cast, payload
// slices with ground truth withheld, personality for the non-legal roles.
// Deterministic given (elements, env_kind, seed).
EpisodeConfig build_episode(const SourceRecord& elements, EnvKind env_kind, std::uint64_t seed,
                            JudgeBackend* style_backend = nullptr);

// Deterministic synthetic source material plus configs for desk-scale
// testing; covers all six environments and all topic-kind combinations.
std::vector<EpisodeConfig> synth_fixtures(std::uint64_t seed,
                                          const std::map<EnvKind, int>& counts);

// Convenience: the same count for all six environments.
std::vector<EpisodeConfig> synth_fixtures(std::uint64_t seed, int per_env);

// ---------------------------------------------------------------------------
// Scripted casts: deterministic role scripts for end-to-end runs without
// a model. The perfect cast completes every task flawlessly; the
// degenerate cast has the agent under test stall; the stalling cast makes
// every participant stall (turn-limit behavior).
// ---------------------------------------------------------------------------

struct RoleScript {
  std::vector<ScriptEntry> entries;
  std::string default_response = "Understood.";
};

// role_id -> script, for one episode
using CastScripts = std::map<std::string, RoleScript>;

CastScripts perfect_cast_scripts(const EpisodeConfig& config);
CastScripts degenerate_cast_scripts(const EpisodeConfig& config);
CastScripts stalling_cast_scripts(const EpisodeConfig& config);

// Script library covering many episodes; serializable so CLI runs can use
// scripted backends from a file.
class ScriptLibrary {
 public:
  void add(const std::string& episode_id, CastScripts scripts);
  const RoleScript* find(const std::string& episode_id, const std::string& role_id) const;

  std::string to_json_text() const;
  static ScriptLibrary from_json_text(const std::string& text);
  static ScriptLibrary from_file(const std::string& path);

  // Fresh ScriptedBackend per (episode, role); roles without a script get
  // an always-default backend.
  ChatBackendPtr make_backend(const EpisodeConfig& config, const std::string& role_id) const;

 private:
  std::map<std::string, CastScripts> episodes_;
  std::string fallback_default_ = "...";
};

ScriptLibrary library_for(const std::vector<EpisodeConfig>& configs,
                          CastScripts (*builder)(const EpisodeConfig&));

std::string regex_escape(const std::string& literal);

}  // namespace legalsim::corpus
