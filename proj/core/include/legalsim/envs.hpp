#pragma once

#include <optional>
#include <set>
#include <string>

#include "legalsim/backend.hpp"
#include "legalsim/domain.hpp"
#include "legalsim/judge.hpp"

namespace legalsim::envs {

// Bad cast, missing payload, or invalid profile discovered before the
// episode starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Role kinds each environment requires. The presiding judge of the courts
// is the agent under test.
std::set<RoleKind> required_cast(EnvKind kind);

// Full pre-flight validation: profile invariants, cast match, payload
// presence, ground-truth consistency.
std::vector<std::string> validate_config(const EpisodeConfig& config);

struct DocumentScan {
  std::optional<std::string> document;
  bool malformed = false;  // begin marker without end
};

// Extracts the fenced document from a CD/DD turn.
DocumentScan detect_document(const std::string& content);

// Parses the fenced judgment block of a court turn. CI fields: RULING,
// REASONING, LAWS (missing fields default empty). CR fields: CRIME,
// SENTENCE_MONTHS, FINE, REASONING, LAWS; a missing or non-integer verdict
// field marks the judgment unparseable.
std::optional<StructuredJudgment> detect_judgment(const std::string& content, EnvKind env);

struct EnvState {
  EnvKind env_kind = EnvKind::KnowledgeQuestioning;
  std::optional<std::string> current_stage;    // CI/CR
  std::set<std::string> topics_remaining;      // KQ/LC
  bool document_emitted = false;               // CD/DD
  bool judgment_emitted = false;               // CI/CR
  int turn_count = 0;
  bool malformed_document_seen = false;
  int unresolved_rounds = 0;
};

struct EnvOptions {
  std::size_t history_window = 0;  // rendered turns per prompt; 0 = all
  std::optional<ProcedureSpec> procedure;
};

// One per episode; drives routing, prompting, topic tracking, stage
// advancement, artifact detection, and termination.
class Environment {
 public:
  Environment(const EpisodeConfig& config, JudgeBackend* judge, EnvOptions options = {});

  const EnvState& state() const { return state_; }
  const EpisodeConfig& config() const { return config_; }
  const TerminalArtifact& artifact() const { return artifact_; }

  // Opening speaker: the non-legal participant in two-party environments,
  // the judge in the courts.
  std::string initiator() const;

  // System prompt plus the rendered history window from this role's
  // perspective.
  std::vector<ChatMessage> assemble_prompt(const std::string& role_id,
                                           const std::vector<Turn>& history) const;

  // Addressee recorded on a freshly spoken turn.
  std::string addressee_for(const std::string& speaker, const std::string& content) const;

  // Next speaker after the given turn. Total: falls back to the judge
  // backend and then to the per-stage default table in the courts.
  std::string route_next(const Turn& last_turn);

  // Folds a freshly appended turn into the state: counts it, labels Level-I
  // rounds, tracks stages, and detects terminal artifacts. May set the
  // turn's stage/topic tags.
  void observe(Turn& turn);

  // Termination reason, if the episode is over.
  std::optional<Termination> is_terminated() const;

  std::string role_of_kind(RoleKind kind) const;  // "" when absent

 private:
  std::string two_party_partner(const std::string& role_id) const;
  void observe_court_turn(Turn& turn);
  void observe_level1_turn(Turn& turn);

  EpisodeConfig config_;
  JudgeBackend* judge_;
  EnvOptions options_;
  EnvState state_;
  TerminalArtifact artifact_;
  ProcedureSpec procedure_;                       // CI/CR only
  std::vector<std::set<std::string>> observed_;   // matched action ids per stage
  std::size_t stage_index_ = 0;
  std::optional<std::string> last_question_;      // KQ/LC round pairing
};

// Directive prefix parser: "@role_id: ..." -> role_id.
std::optional<std::string> parse_addressee_directive(const std::string& content);

}  // namespace legalsim::envs
