#include "legalsim/domain.hpp"

#include <algorithm>
#include <set>

namespace legalsim {

namespace {

template <typename T>
std::optional<T> lookup(const std::vector<std::pair<T, std::string>>& table,
                        std::string_view code) {
  for (const auto& [value, name] : table)
    if (name == code) return value;
  return std::nullopt;
}

template <typename T>
std::string name_of(const std::vector<std::pair<T, std::string>>& table, T v) {
  for (const auto& [value, name] : table)
    if (value == v) return name;
  return "?";
}

const std::vector<std::pair<EnvKind, std::string>>& env_table() {
  static const std::vector<std::pair<EnvKind, std::string>> t = {
      {EnvKind::KnowledgeQuestioning, "KQ"}, {EnvKind::LegalConsultation, "LC"},
      {EnvKind::ComplaintDrafting, "CD"},    {EnvKind::DefenceDrafting, "DD"},
      {EnvKind::CivilCourt, "CI"},           {EnvKind::CriminalCourt, "CR"},
  };
  return t;
}

const std::vector<std::pair<RoleKind, std::string>>& role_table() {
  static const std::vector<std::pair<RoleKind, std::string>> t = {
      {RoleKind::GeneralPublic, "general_public"},
      {RoleKind::Plaintiff, "plaintiff"},
      {RoleKind::Defendant, "defendant"},
      {RoleKind::PlaintiffLawyer, "plaintiff_lawyer"},
      {RoleKind::DefendantLawyer, "defendant_lawyer"},
      {RoleKind::Procurator, "procurator"},
      {RoleKind::Judge, "judge"},
      {RoleKind::LegalAgent, "legal_agent"},
  };
  return t;
}

const std::vector<std::pair<TraitLevel, std::string>>& level_table() {
  static const std::vector<std::pair<TraitLevel, std::string>> t = {
      {TraitLevel::High, "high"}, {TraitLevel::Medium, "medium"}, {TraitLevel::Low, "low"}};
  return t;
}

const std::vector<std::pair<Gender, std::string>>& gender_table() {
  static const std::vector<std::pair<Gender, std::string>> t = {
      {Gender::Female, "female"}, {Gender::Male, "male"}, {Gender::Unspecified, "unspecified"}};
  return t;
}

const std::vector<std::pair<EntityKind, std::string>>& entity_table() {
  static const std::vector<std::pair<EntityKind, std::string>> t = {
      {EntityKind::Individual, "individual"}, {EntityKind::Corporation, "corporation"}};
  return t;
}

const std::vector<std::pair<TopicKind, std::string>>& topic_kind_table() {
  static const std::vector<std::pair<TopicKind, std::string>> t = {
      {TopicKind::Binary, "binary"}, {TopicKind::OpenEnded, "open_ended"}};
  return t;
}

const std::vector<std::pair<GroundTruthKind, std::string>>& gt_kind_table() {
  static const std::vector<std::pair<GroundTruthKind, std::string>> t = {
      {GroundTruthKind::YesNo, "yes_no"},
      {GroundTruthKind::LegalProvision, "legal_provision"},
      {GroundTruthKind::LegalPhrase, "legal_phrase"}};
  return t;
}

const std::vector<std::pair<Termination, std::string>>& termination_table() {
  static const std::vector<std::pair<Termination, std::string>> t = {
      {Termination::Completed, "completed"},
      {Termination::MaxTurnsExceeded, "max_turns_exceeded"},
      {Termination::BackendError, "backend_error"}};
  return t;
}

}  // namespace

std::string to_code(EnvKind k) { return name_of(env_table(), k); }
std::optional<EnvKind> env_kind_from_code(std::string_view c) { return lookup(env_table(), c); }

const std::vector<EnvKind>& all_env_kinds() {
  static const std::vector<EnvKind> all = {
      EnvKind::KnowledgeQuestioning, EnvKind::LegalConsultation, EnvKind::ComplaintDrafting,
      EnvKind::DefenceDrafting,      EnvKind::CivilCourt,        EnvKind::CriminalCourt};
  return all;
}

std::string to_code(RoleKind k) { return name_of(role_table(), k); }
std::optional<RoleKind> role_kind_from_code(std::string_view c) { return lookup(role_table(), c); }

std::string to_code(TraitLevel l) { return name_of(level_table(), l); }
std::optional<TraitLevel> trait_level_from_code(std::string_view c) {
  return lookup(level_table(), c);
}

std::string to_code(Gender g) { return name_of(gender_table(), g); }
std::optional<Gender> gender_from_code(std::string_view c) { return lookup(gender_table(), c); }

std::string to_code(EntityKind k) { return name_of(entity_table(), k); }
std::optional<EntityKind> entity_kind_from_code(std::string_view c) {
  return lookup(entity_table(), c);
}

std::string to_code(TopicKind k) { return name_of(topic_kind_table(), k); }
std::optional<TopicKind> topic_kind_from_code(std::string_view c) {
  return lookup(topic_kind_table(), c);
}

std::string to_code(GroundTruthKind k) { return name_of(gt_kind_table(), k); }
std::optional<GroundTruthKind> ground_truth_kind_from_code(std::string_view c) {
  return lookup(gt_kind_table(), c);
}

std::string to_code(Termination t) { return name_of(termination_table(), t); }
std::optional<Termination> termination_from_code(std::string_view c) {
  return lookup(termination_table(), c);
}

int default_max_turns(EnvKind k) {
  switch (k) {
    case EnvKind::KnowledgeQuestioning: return 15;
    case EnvKind::LegalConsultation: return 10;
    case EnvKind::ComplaintDrafting: return 20;
    case EnvKind::DefenceDrafting: return 15;
    case EnvKind::CivilCourt: return 50;
    case EnvKind::CriminalCourt: return 35;
  }
  return 0;
}

bool role_carries_personality(RoleKind k) {
  return k == RoleKind::GeneralPublic || k == RoleKind::Plaintiff || k == RoleKind::Defendant;
}

bool is_agent_under_test(RoleKind k) {
  return k == RoleKind::LegalAgent || k == RoleKind::Judge;
}

const std::vector<std::string>& trait_dimension_names() {
  static const std::vector<std::string> names = {
      "extraversion", "emotional_stability", "openness", "agreeableness", "conscientiousness"};
  return names;
}

TraitLevel get_dimension(const PersonalityTraits& t, int dim) {
  switch (dim) {
    case 0: return t.extraversion;
    case 1: return t.emotional_stability;
    case 2: return t.openness;
    case 3: return t.agreeableness;
    default: return t.conscientiousness;
  }
}

void set_dimension(PersonalityTraits& t, int dim, TraitLevel level) {
  switch (dim) {
    case 0: t.extraversion = level; break;
    case 1: t.emotional_stability = level; break;
    case 2: t.openness = level; break;
    case 3: t.agreeableness = level; break;
    default: t.conscientiousness = level; break;
  }
}

std::vector<std::string> validate_attributes(const PersonAttributes& a) {
  std::vector<std::string> v;
  if (a.name.empty()) v.push_back("attributes.name must be non-empty");
  if (a.entity_kind == EntityKind::Corporation) {
    if (!a.representative_name || a.representative_name->empty())
      v.push_back("corporation attributes require representative_name");
  } else if (a.representative_name) {
    v.push_back("representative_name is only valid for corporations");
  }
  return v;
}

std::vector<std::string> validate_topic_item(const TopicItem& t) {
  std::vector<std::string> v;
  if (t.id.empty()) v.push_back("topic id must be non-empty");
  if (t.question.empty()) v.push_back("topic '" + t.id + "' question must be non-empty");
  if (t.kind == TopicKind::Binary) {
    if (t.ground_truth_kind != GroundTruthKind::YesNo)
      v.push_back("binary topic '" + t.id + "' requires yes_no ground truth kind");
    if (t.ground_truth != "yes" && t.ground_truth != "no" && t.ground_truth != "conditional")
      v.push_back("binary topic '" + t.id + "' ground truth must be yes/no/conditional");
  } else {
    if (t.ground_truth_kind == GroundTruthKind::YesNo)
      v.push_back("open-ended topic '" + t.id + "' requires provision or phrase ground truth");
  }
  return v;
}

std::vector<std::string> validate_topic_list(const TopicList& l) {
  std::vector<std::string> v;
  if (l.topics.empty()) v.push_back("topic list must contain at least one topic");
  std::set<std::string> ids;
  for (const auto& t : l.topics) {
    for (auto& e : validate_topic_item(t)) v.push_back(e);
    if (!ids.insert(t.id).second) v.push_back("duplicate topic id '" + t.id + "'");
  }
  return v;
}

std::vector<std::string> validate_civil_elements(const CivilCaseElements& e) {
  std::vector<std::string> v;
  for (auto& x : validate_attributes(e.plaintiff)) v.push_back("plaintiff: " + x);
  for (auto& x : validate_attributes(e.defendant)) v.push_back("defendant: " + x);
  if (e.claims.empty()) v.push_back("claims must be non-empty");
  std::set<std::string> laws(e.applied_laws.begin(), e.applied_laws.end());
  if (laws.size() != e.applied_laws.size()) v.push_back("applied_laws entries must be unique");
  return v;
}

std::vector<std::string> validate_criminal_elements(const CriminalCaseElements& e) {
  std::vector<std::string> v;
  for (auto& x : validate_attributes(e.defendant.attributes)) v.push_back("defendant: " + x);
  if (e.charges.empty()) v.push_back("charges must be non-empty");
  if (e.verdict_crime.empty()) v.push_back("verdict_crime must be non-empty");
  if (e.verdict_sentence_months < 0) v.push_back("verdict_sentence_months must be >= 0");
  if (e.verdict_fine_amount < 0) v.push_back("verdict_fine_amount must be >= 0");
  return v;
}

namespace {

bool payload_consistent(RoleKind kind, const RolePayload& payload) {
  switch (kind) {
    case RoleKind::GeneralPublic:
      return std::holds_alternative<TopicPromptList>(payload);
    case RoleKind::Plaintiff:
    case RoleKind::PlaintiffLawyer:
      return std::holds_alternative<CivilPartyPayload>(payload);
    case RoleKind::Defendant:
    case RoleKind::DefendantLawyer:
      return std::holds_alternative<CivilPartyPayload>(payload) ||
             std::holds_alternative<CriminalPartyPayload>(payload);
    case RoleKind::Procurator:
      return std::holds_alternative<CriminalPartyPayload>(payload);
    case RoleKind::Judge:
    case RoleKind::LegalAgent:
      return std::holds_alternative<std::monostate>(payload);
  }
  return false;
}

}  // namespace

std::vector<std::string> validate_profile(const RoleProfile& p) {
  std::vector<std::string> v;
  if (p.role_id.empty()) v.push_back("role_id must be non-empty");
  if (role_carries_personality(p.role_kind)) {
    if (!p.traits) v.push_back("role kind " + to_code(p.role_kind) + " requires traits");
    if (!p.behavioral_style || p.behavioral_style->empty())
      v.push_back("role kind " + to_code(p.role_kind) + " requires behavioral_style");
  } else {
    if (p.traits) v.push_back("role kind " + to_code(p.role_kind) + " must not carry traits");
    if (p.behavioral_style)
      v.push_back("role kind " + to_code(p.role_kind) + " must not carry behavioral_style");
  }
  if (!payload_consistent(p.role_kind, p.payload))
    v.push_back("payload variant inconsistent with role kind " + to_code(p.role_kind));
  if (p.attributes)
    for (auto& x : validate_attributes(*p.attributes)) v.push_back(x);
  if (auto* topics = std::get_if<TopicPromptList>(&p.payload)) {
    if (topics->topics.empty()) v.push_back("topic payload must contain at least one topic");
  }
  return v;
}

bool ground_truth_matches_env(const EpisodeConfig& c) {
  switch (c.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation:
      return std::holds_alternative<TopicList>(c.ground_truth);
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting:
    case EnvKind::CivilCourt:
      return std::holds_alternative<CivilCaseElements>(c.ground_truth);
    case EnvKind::CriminalCourt:
      return std::holds_alternative<CriminalCaseElements>(c.ground_truth);
  }
  return false;
}

std::vector<std::string> validate_transcript(const Transcript& t) {
  std::vector<std::string> v;
  if (t.episode_id.empty()) v.push_back("episode_id must be non-empty");
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    if (t.turns[i].index != static_cast<int>(i)) {
      v.push_back("turn indices must be contiguous from 0 (turn " + std::to_string(i) +
                  " has index " + std::to_string(t.turns[i].index) + ")");
      break;
    }
  }
  const bool is_drafting =
      t.env_kind == EnvKind::ComplaintDrafting || t.env_kind == EnvKind::DefenceDrafting;
  const bool is_court = t.env_kind == EnvKind::CivilCourt || t.env_kind == EnvKind::CriminalCourt;
  if (std::holds_alternative<DocumentArtifact>(t.terminal_artifact) && !is_drafting)
    v.push_back("document artifact only valid for CD/DD transcripts");
  if (std::holds_alternative<StructuredJudgment>(t.terminal_artifact) && !is_court)
    v.push_back("judgment artifact only valid for CI/CR transcripts");
  return v;
}

const std::vector<std::string>& civil_stage_names() {
  static const std::vector<std::string> names = {
      "court preparation", "court investigation", "court debate", "court mitigation",
      "court decision"};
  return names;
}

const std::vector<std::string>& criminal_stage_names() {
  static const std::vector<std::string> names = {
      "court preparation", "court investigation", "court decision"};
  return names;
}

std::vector<std::string> validate_procedure(const ProcedureSpec& spec) {
  std::vector<std::string> v;
  const std::vector<std::string>* expected = nullptr;
  if (spec.env_kind == EnvKind::CivilCourt) {
    expected = &civil_stage_names();
  } else if (spec.env_kind == EnvKind::CriminalCourt) {
    expected = &criminal_stage_names();
  } else {
    v.push_back("procedure env_kind must be CI or CR");
    return v;
  }
  if (spec.stages.size() != expected->size()) {
    v.push_back("expected " + std::to_string(expected->size()) + " stages, got " +
                std::to_string(spec.stages.size()));
  } else {
    for (std::size_t i = 0; i < expected->size(); ++i) {
      if (spec.stages[i].stage_name != (*expected)[i])
        v.push_back("stage " + std::to_string(i) + " must be named '" + (*expected)[i] +
                    "', got '" + spec.stages[i].stage_name + "'");
    }
  }
  std::set<std::string> ids;
  for (const auto& s : spec.stages) {
    if (s.actions.empty())
      v.push_back("stage '" + s.stage_name + "' must declare at least one mandatory action");
    if (!ids.insert(s.stage_id).second) v.push_back("duplicate stage id '" + s.stage_id + "'");
    for (const auto& a : s.actions)
      if (a.match_patterns.empty())
        v.push_back("action '" + a.action_id + "' must declare at least one match pattern");
  }
  return v;
}

std::optional<MetricBounds> metric_bounds(const std::string& metric) {
  if (metric == "BIN") return MetricBounds{0.0, 1.0, false};
  if (metric == "NBIN") return MetricBounds{0.0, 10.0, false};
  if (metric == "FOR") return MetricBounds{0.0, 1.0, false};
  if (metric == "DOC") return MetricBounds{0.0, 1.0, false};
  if (metric == "PFS") return MetricBounds{0.0, 1.0, false};
  if (metric == "JUD") return MetricBounds{1.0, 10.0, false};
  if (metric == "CRI") return MetricBounds{0.0, 1.0, false};
  if (metric == "VER") return MetricBounds{0.0, 0.0, true};
  if (metric == "REA") return MetricBounds{1.0, 10.0, false};
  if (metric == "LAW") return MetricBounds{0.0, 1.0, false};
  return std::nullopt;
}

const std::vector<std::string>& metrics_for_env(EnvKind k) {
  static const std::vector<std::string> level1 = {"BIN", "NBIN"};
  static const std::vector<std::string> level2 = {"FOR", "DOC"};
  static const std::vector<std::string> civil = {"PFS", "JUD", "REA", "LAW"};
  static const std::vector<std::string> criminal = {"PFS", "CRI", "VER", "REA", "LAW"};
  switch (k) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: return level1;
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting: return level2;
    case EnvKind::CivilCourt: return civil;
    case EnvKind::CriminalCourt: return criminal;
  }
  return level1;
}

std::vector<std::string> validate_score_card(const ScoreCard& card) {
  std::vector<std::string> v;
  for (const auto& [name, value] : card.metrics) {
    auto bounds = metric_bounds(name);
    if (!bounds) {
      v.push_back("unknown metric '" + name + "'");
      continue;
    }
    if (value < bounds->lo || (!bounds->unbounded_above && value > bounds->hi))
      v.push_back("metric '" + name + "' value " + std::to_string(value) + " out of bounds");
    if (name == "BIN" && value != 0.0 && value != 0.5 && value != 1.0) {
      // BIN per-topic values are three-valued; the episode mean may land
      // anywhere in [0,1], so only flag obvious range escapes above.
    }
    if (name == "CRI" && value != 0.0 && value != 1.0)
      v.push_back("CRI must be 0 or 1");
  }
  for (const auto& [name, value] : card.normalized) {
    if (value < 0.0 || value > 100.0)
      v.push_back("normalized '" + name + "' value out of [0,100]");
  }
  return v;
}

}  // namespace legalsim
