#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace legalsim {

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Enums
// ---------------------------------------------------------------------------

enum class EnvKind {
  KnowledgeQuestioning,  // KQ
  LegalConsultation,     // LC
  ComplaintDrafting,     // CD
  DefenceDrafting,       // DD
  CivilCourt,            // CI
  CriminalCourt,         // CR
};

enum class RoleKind {
  GeneralPublic,
  Plaintiff,
  Defendant,
  PlaintiffLawyer,
  DefendantLawyer,
  Procurator,
  Judge,
  LegalAgent,
};

enum class TraitLevel { High, Medium, Low };

enum class Gender { Female, Male, Unspecified };

enum class EntityKind { Individual, Corporation };

enum class TopicKind { Binary, OpenEnded };

enum class GroundTruthKind { YesNo, LegalProvision, LegalPhrase };

enum class Termination { Completed, MaxTurnsExceeded, BackendError };

std::string to_code(EnvKind k);                 // "KQ", "LC", ...
std::optional<EnvKind> env_kind_from_code(std::string_view code);
const std::vector<EnvKind>& all_env_kinds();

std::string to_code(RoleKind k);                // "general_public", ...
std::optional<RoleKind> role_kind_from_code(std::string_view code);

std::string to_code(TraitLevel l);
std::optional<TraitLevel> trait_level_from_code(std::string_view code);

std::string to_code(Gender g);
std::optional<Gender> gender_from_code(std::string_view code);

std::string to_code(EntityKind k);
std::optional<EntityKind> entity_kind_from_code(std::string_view code);

std::string to_code(TopicKind k);
std::optional<TopicKind> topic_kind_from_code(std::string_view code);

std::string to_code(GroundTruthKind k);
std::optional<GroundTruthKind> ground_truth_kind_from_code(std::string_view code);

std::string to_code(Termination t);
std::optional<Termination> termination_from_code(std::string_view code);

// Turn caps per environment. KQ 15, LC 10, CD 20, DD 15, CI 50, CR 35.
int default_max_turns(EnvKind k);

// Roles that receive personality traits and a behavioral style (the
// non-legal participants). Court professionals and the agent under test
// are configured without personality.
bool role_carries_personality(RoleKind k);

// True for the participant the harness measures: the legal agent in
// two-party environments and the presiding judge in the courts.
bool is_agent_under_test(RoleKind k);

// ---------------------------------------------------------------------------
// Personality & identity
// ---------------------------------------------------------------------------

struct PersonalityTraits {
  TraitLevel extraversion = TraitLevel::Medium;
  TraitLevel emotional_stability = TraitLevel::Medium;
  TraitLevel openness = TraitLevel::Medium;
  TraitLevel agreeableness = TraitLevel::Medium;
  TraitLevel conscientiousness = TraitLevel::Medium;

  bool operator==(const PersonalityTraits&) const = default;
};

inline constexpr int kTraitDimensions = 5;
const std::vector<std::string>& trait_dimension_names();
TraitLevel get_dimension(const PersonalityTraits& t, int dim);
void set_dimension(PersonalityTraits& t, int dim, TraitLevel level);

struct PersonAttributes {
  std::string name;
  Gender gender = Gender::Unspecified;
  std::string ethnicity;
  std::string birthdate;  // ISO-8601 date
  std::string address;
  EntityKind entity_kind = EntityKind::Individual;
  std::optional<std::string> representative_name;  // corporations only

  bool operator==(const PersonAttributes&) const = default;
};

// ---------------------------------------------------------------------------
// Topics (Level I source material)
// ---------------------------------------------------------------------------

struct TopicItem {
  std::string id;
  TopicKind kind = TopicKind::Binary;
  std::string question;
  std::string ground_truth;
  GroundTruthKind ground_truth_kind = GroundTruthKind::YesNo;

  bool operator==(const TopicItem&) const = default;
};

struct TopicList {
  std::string theme;
  std::optional<std::string> background;
  std::optional<std::string> occupation;  // rides with the source record; seeds the public persona
  std::vector<TopicItem> topics;

  bool operator==(const TopicList&) const = default;
};

// Question-only view handed to the public role. Carries no answers so a
// participant payload can never leak the answer key.
struct TopicPromptItem {
  std::string id;
  TopicKind kind = TopicKind::Binary;
  std::string question;

  bool operator==(const TopicPromptItem&) const = default;
};

struct TopicPromptList {
  std::string theme;
  std::optional<std::string> background;
  std::vector<TopicPromptItem> topics;

  bool operator==(const TopicPromptList&) const = default;
};

// ---------------------------------------------------------------------------
// Case elements (Level II / III source material)
// ---------------------------------------------------------------------------

struct CivilCaseElements {
  PersonAttributes plaintiff;
  PersonAttributes defendant;
  std::vector<std::string> claims;
  std::string case_details;
  std::string defence_statement;
  std::vector<std::string> plaintiff_evidence;
  std::vector<std::string> defendant_evidence;
  std::string court_judgment;
  std::string court_findings;
  std::vector<std::string> applied_laws;  // canonical statute identifiers

  bool operator==(const CivilCaseElements&) const = default;
};

struct CriminalDefendant {
  PersonAttributes attributes;
  std::string occupation;
  std::string education;
  std::string custody_status;

  bool operator==(const CriminalDefendant&) const = default;
};

struct CriminalCaseElements {
  CriminalDefendant defendant;
  std::string plea_statement;
  std::string lawyer_defence;
  std::vector<std::string> charges;
  std::string procurator_opinion;
  std::string verdict_crime;  // canonical charge label
  std::int64_t verdict_sentence_months = 0;
  std::int64_t verdict_fine_amount = 0;  // currency minor units
  std::string court_findings;
  std::vector<std::string> applied_laws;

  bool operator==(const CriminalCaseElements&) const = default;
};

// ---------------------------------------------------------------------------
// Role payloads. Each is a strict subset of the case elements: the types
// have no slot for judgments, findings, applied laws, verdicts, or topic
// answers, so ground truth cannot be carried by construction.
// ---------------------------------------------------------------------------

struct CivilPartyPayload {
  std::optional<PersonAttributes> plaintiff;
  std::optional<PersonAttributes> defendant;
  std::vector<std::string> claims;
  std::optional<std::string> case_details;
  std::optional<std::string> defence_statement;
  std::vector<std::string> plaintiff_evidence;
  std::vector<std::string> defendant_evidence;

  bool operator==(const CivilPartyPayload&) const = default;
};

struct CriminalPartyPayload {
  std::optional<CriminalDefendant> defendant;
  std::optional<std::string> plea_statement;
  std::optional<std::string> lawyer_defence;
  std::vector<std::string> charges;
  std::optional<std::string> procurator_opinion;

  bool operator==(const CriminalPartyPayload&) const = default;
};

using RolePayload =
    std::variant<std::monostate, TopicPromptList, CivilPartyPayload, CriminalPartyPayload>;

struct RoleProfile {
  std::string role_id;
  RoleKind role_kind = RoleKind::LegalAgent;
  std::optional<PersonAttributes> attributes;
  std::optional<PersonalityTraits> traits;
  std::optional<std::string> behavioral_style;
  RolePayload payload;

  bool operator==(const RoleProfile&) const = default;
};

// Violated-invariant report; empty means the profile is valid.
std::vector<std::string> validate_profile(const RoleProfile& profile);

std::vector<std::string> validate_attributes(const PersonAttributes& a);
std::vector<std::string> validate_topic_item(const TopicItem& t);
std::vector<std::string> validate_topic_list(const TopicList& l);
std::vector<std::string> validate_civil_elements(const CivilCaseElements& e);
std::vector<std::string> validate_criminal_elements(const CriminalCaseElements& e);

// ---------------------------------------------------------------------------
// Episodes
// ---------------------------------------------------------------------------

using GroundTruth = std::variant<TopicList, CivilCaseElements, CriminalCaseElements>;

struct EpisodeConfig {
  std::string episode_id;
  EnvKind env_kind = EnvKind::KnowledgeQuestioning;
  std::map<std::string, RoleProfile> participants;  // role_id -> profile
  GroundTruth ground_truth;
  int max_turns = 0;  // 0 -> default_max_turns(env_kind) on load
  std::uint64_t seed = 0;

  bool operator==(const EpisodeConfig&) const = default;
};

// Ground-truth variant consistent with the environment kind.
bool ground_truth_matches_env(const EpisodeConfig& config);

// ---------------------------------------------------------------------------
// Transcripts
// ---------------------------------------------------------------------------

// Broadcast sentinel for Turn.addressee: routing stays total without an
// absent-field special case.
inline constexpr const char* kBroadcast = "*";

struct Turn {
  int index = 0;  // 0-based, contiguous
  std::string speaker;
  std::string addressee = kBroadcast;
  std::string content;
  std::optional<std::string> stage_tag;
  std::optional<std::string> topic_tag;
  std::int64_t timestamp_ms = 0;

  bool operator==(const Turn&) const = default;
};

struct CivilJudgment {
  std::string ruling_text;
  std::string reasoning;
  std::vector<std::string> cited_laws;

  bool operator==(const CivilJudgment&) const = default;
};

struct CriminalJudgment {
  std::string crime;
  std::int64_t sentence_months = 0;
  std::int64_t fine_amount = 0;
  std::string reasoning;
  std::vector<std::string> cited_laws;

  bool operator==(const CriminalJudgment&) const = default;
};

struct StructuredJudgment {
  std::variant<CivilJudgment, CriminalJudgment> body;
  // Set when a rendered judgment was detected but its mandatory fields
  // could not be parsed; verdict metrics then score as full failure.
  bool unparseable = false;

  bool operator==(const StructuredJudgment&) const = default;
};

struct DocumentArtifact {
  std::string text;
  bool operator==(const DocumentArtifact&) const = default;
};

using TerminalArtifact = std::variant<std::monostate, DocumentArtifact, StructuredJudgment>;

struct Transcript {
  std::string episode_id;
  EnvKind env_kind = EnvKind::KnowledgeQuestioning;
  std::vector<Turn> turns;
  TerminalArtifact terminal_artifact;
  Termination termination = Termination::Completed;

  bool operator==(const Transcript&) const = default;
};

std::vector<std::string> validate_transcript(const Transcript& t);

// ---------------------------------------------------------------------------
// Court procedure
// ---------------------------------------------------------------------------

struct ProcedureAction {
  std::string action_id;
  std::string description;
  std::vector<std::string> match_patterns;  // case-insensitive keyword patterns

  bool operator==(const ProcedureAction&) const = default;
};

struct ProcedureStage {
  std::string stage_id;
  std::string stage_name;
  std::vector<ProcedureAction> actions;

  bool operator==(const ProcedureStage&) const = default;
};

struct ProcedureSpec {
  EnvKind env_kind = EnvKind::CivilCourt;  // CI or CR only
  std::vector<ProcedureStage> stages;

  bool operator==(const ProcedureSpec&) const = default;
};

// Stage count, names, order, and non-empty action lists are all fixed per
// court kind; returns the violations (empty if valid).
std::vector<std::string> validate_procedure(const ProcedureSpec& spec);

const std::vector<std::string>& civil_stage_names();     // five stages
const std::vector<std::string>& criminal_stage_names();  // three stages

// ---------------------------------------------------------------------------
// Scores
// ---------------------------------------------------------------------------

struct MetricBounds {
  double lo = 0.0;
  double hi = 1.0;
  bool unbounded_above = false;
};

// Declared bounds per metric name (BIN, NBIN, FOR, DOC, PFS, JUD, CRI,
// VER, REA, LAW); empty optional for unknown names.
std::optional<MetricBounds> metric_bounds(const std::string& metric);

// Metric names for each environment, in report column order.
const std::vector<std::string>& metrics_for_env(EnvKind k);

struct ScoreCard {
  std::string episode_id;
  EnvKind env_kind = EnvKind::KnowledgeQuestioning;
  std::map<std::string, double> metrics;              // raw values in declared bounds
  std::map<std::string, double> sub_scores;           // components, stage flags, per-topic values
  std::map<std::string, double> normalized;           // [0,100] per metric
  std::map<std::string, std::string> unavailable;     // metric -> reason (judge failures etc.)

  bool operator==(const ScoreCard&) const = default;
};

std::vector<std::string> validate_score_card(const ScoreCard& card);

}  // namespace legalsim
