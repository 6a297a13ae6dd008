#include "legalsim/envs.hpp"

#include <algorithm>
#include <cctype>

#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/prompts.hpp"
#include "legalsim/text.hpp"

namespace legalsim::envs {

std::set<RoleKind> required_cast(EnvKind kind) {
  switch (kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation:
      return {RoleKind::GeneralPublic, RoleKind::LegalAgent};
    case EnvKind::ComplaintDrafting:
      return {RoleKind::Plaintiff, RoleKind::LegalAgent};
    case EnvKind::DefenceDrafting:
      return {RoleKind::Defendant, RoleKind::LegalAgent};
    case EnvKind::CivilCourt:
      return {RoleKind::PlaintiffLawyer, RoleKind::DefendantLawyer, RoleKind::Judge};
    case EnvKind::CriminalCourt:
      return {RoleKind::Defendant, RoleKind::DefendantLawyer, RoleKind::Procurator,
              RoleKind::Judge};
  }
  return {};
}

namespace {

bool payload_required(EnvKind env, RoleKind kind) {
  if (kind == RoleKind::Judge || kind == RoleKind::LegalAgent) return false;
  (void)env;
  return true;
}

}  // namespace

std::vector<std::string> validate_config(const EpisodeConfig& config) {
  std::vector<std::string> v;
  if (config.episode_id.empty()) v.push_back("episode_id must be non-empty");
  if (config.max_turns < 1) v.push_back("max_turns must be positive");
  if (!ground_truth_matches_env(config))
    v.push_back("ground truth kind does not match env_kind " + to_code(config.env_kind));

  std::multiset<RoleKind> present;
  for (const auto& [id, p] : config.participants) {
    present.insert(p.role_kind);
    for (auto& e : validate_profile(p)) v.push_back("participant '" + id + "': " + e);
    if (payload_required(config.env_kind, p.role_kind) &&
        std::holds_alternative<std::monostate>(p.payload))
      v.push_back("participant '" + id + "' is missing its required payload");
  }
  auto cast = required_cast(config.env_kind);
  for (RoleKind kind : cast) {
    if (present.count(kind) == 0)
      v.push_back("cast for " + to_code(config.env_kind) + " requires role kind " + to_code(kind));
    if (present.count(kind) > 1)
      v.push_back("cast for " + to_code(config.env_kind) + " allows one " + to_code(kind));
  }
  if (config.participants.size() != cast.size())
    v.push_back("cast for " + to_code(config.env_kind) + " has " +
                std::to_string(cast.size()) + " participants, got " +
                std::to_string(config.participants.size()));
  return v;
}

// ---------------------------------------------------------------------------
// detectors
// ---------------------------------------------------------------------------

DocumentScan detect_document(const std::string& content) {
  DocumentScan scan;
  auto begin = content.find(kDocumentBegin);
  if (begin == std::string::npos) return scan;
  auto body_start = begin + std::string(kDocumentBegin).size();
  auto end = content.find(kDocumentEnd, body_start);
  if (end == std::string::npos) {
    scan.malformed = true;
    return scan;
  }
  scan.document = text::trim(content.substr(body_start, end - body_start));
  return scan;
}

namespace {

// Leading integer of a field; rejects empty or non-numeric text.
std::optional<std::int64_t> parse_leading_int(const std::string& s) {
  std::string t = text::trim(s);
  if (t.empty()) return std::nullopt;
  std::size_t i = 0;
  if (t[0] == '+') i = 1;
  if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
  std::int64_t value = 0;
  for (; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i)
    value = value * 10 + (t[i] - '0');
  return value;
}

std::vector<std::string> parse_law_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& chunk : text::split(s, ';'))
    for (auto& line : text::split(chunk, '\n')) {
      std::string t = text::trim(line);
      if (!t.empty() && t != "-") out.push_back(t);
    }
  return out;
}

}  // namespace

std::optional<StructuredJudgment> detect_judgment(const std::string& content, EnvKind env) {
  auto begin = content.find(kJudgmentBegin);
  if (begin == std::string::npos) return std::nullopt;
  auto body_start = begin + std::string(kJudgmentBegin).size();
  auto end = content.find(kJudgmentEnd, body_start);
  std::string block = end == std::string::npos
                          ? content.substr(body_start)
                          : content.substr(body_start, end - body_start);
  StructuredJudgment judgment;
  if (env == EnvKind::CivilCourt) {
    CivilJudgment civ;
    civ.ruling_text = payload_section(block, "RULING");
    civ.reasoning = payload_section(block, "REASONING");
    civ.cited_laws = parse_law_list(payload_section(block, "LAWS"));
    judgment.body = std::move(civ);
    return judgment;
  }
  CriminalJudgment cr;
  cr.crime = payload_section(block, "CRIME");
  cr.reasoning = payload_section(block, "REASONING");
  cr.cited_laws = parse_law_list(payload_section(block, "LAWS"));
  auto sentence = parse_leading_int(payload_section(block, "SENTENCE_MONTHS"));
  auto fine = parse_leading_int(payload_section(block, "FINE"));
  if (cr.crime.empty() || !sentence || !fine) {
    judgment.unparseable = true;
  } else {
    cr.sentence_months = *sentence;
    cr.fine_amount = *fine;
  }
  judgment.body = std::move(cr);
  return judgment;
}

std::optional<std::string> parse_addressee_directive(const std::string& content) {
  std::string t = text::trim(content);
  if (t.empty() || t[0] != '@') return std::nullopt;
  std::size_t i = 1;
  while (i < t.size() &&
         (std::isalnum(static_cast<unsigned char>(t[i])) || t[i] == '_' || t[i] == '-'))
    ++i;
  if (i == 1 || i >= t.size() || t[i] != ':') return std::nullopt;
  return t.substr(1, i - 1);
}

// ---------------------------------------------------------------------------
// Environment
// ---------------------------------------------------------------------------

Environment::Environment(const EpisodeConfig& config, JudgeBackend* judge, EnvOptions options)
    : config_(config), judge_(judge), options_(std::move(options)) {
  auto violations = validate_config(config_);
  if (!violations.empty())
    throw ConfigError("episode '" + config_.episode_id + "': " + violations.front());

  state_.env_kind = config_.env_kind;
  if (config_.env_kind == EnvKind::KnowledgeQuestioning ||
      config_.env_kind == EnvKind::LegalConsultation) {
    for (const auto& t : std::get<TopicList>(config_.ground_truth).topics)
      state_.topics_remaining.insert(t.id);
  }
  if (config_.env_kind == EnvKind::CivilCourt || config_.env_kind == EnvKind::CriminalCourt) {
    procedure_ = options_.procedure ? *options_.procedure
                                    : procedures::default_procedure(config_.env_kind);
    auto pviol = validate_procedure(procedure_);
    if (!pviol.empty()) throw ConfigError("procedure: " + pviol.front());
    observed_.resize(procedure_.stages.size());
    state_.current_stage = procedure_.stages.front().stage_id;
  }
}

std::string Environment::role_of_kind(RoleKind kind) const {
  for (const auto& [id, p] : config_.participants)
    if (p.role_kind == kind) return id;
  return {};
}

std::string Environment::initiator() const {
  switch (config_.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: return role_of_kind(RoleKind::GeneralPublic);
    case EnvKind::ComplaintDrafting: return role_of_kind(RoleKind::Plaintiff);
    case EnvKind::DefenceDrafting: return role_of_kind(RoleKind::Defendant);
    case EnvKind::CivilCourt:
    case EnvKind::CriminalCourt: return role_of_kind(RoleKind::Judge);
  }
  return {};
}

std::string Environment::two_party_partner(const std::string& role_id) const {
  for (const auto& [id, p] : config_.participants)
    if (id != role_id) return id;
  return role_id;
}

namespace {

void append_attributes(std::string& out, const PersonAttributes& a, const std::string& heading) {
  out += heading + ": " + a.name;
  if (a.entity_kind == EntityKind::Corporation) {
    out += " (corporation";
    if (a.representative_name) out += ", legal representative " + *a.representative_name;
    out += ")";
  } else {
    out += ", " + to_code(a.gender);
    if (!a.ethnicity.empty()) out += ", " + a.ethnicity;
    if (!a.birthdate.empty()) out += ", born " + a.birthdate;
  }
  if (!a.address.empty()) out += ", address " + a.address;
  out += "\n";
}

void append_list(std::string& out, const std::string& heading,
                 const std::vector<std::string>& items) {
  if (items.empty()) return;
  out += heading + ":\n";
  for (const auto& i : items) out += "- " + i + "\n";
}

std::string render_payload(const RolePayload& payload) {
  std::string out;
  if (auto* topics = std::get_if<TopicPromptList>(&payload)) {
    out += "Theme: " + topics->theme + "\n";
    if (topics->background) out += "Your background: " + *topics->background + "\n";
    out += "Your topics, in order:\n";
    for (const auto& t : topics->topics)
      out += "- [topic:" + t.id + "] (" + to_code(t.kind) + ") " + t.question + "\n";
    return out;
  }
  if (auto* civ = std::get_if<CivilPartyPayload>(&payload)) {
    if (civ->plaintiff) append_attributes(out, *civ->plaintiff, "Plaintiff");
    if (civ->defendant) append_attributes(out, *civ->defendant, "Defendant");
    append_list(out, "Claims", civ->claims);
    if (civ->case_details) out += "Case details: " + *civ->case_details + "\n";
    if (civ->defence_statement) out += "Statement of defence: " + *civ->defence_statement + "\n";
    append_list(out, "Plaintiff evidence", civ->plaintiff_evidence);
    append_list(out, "Defendant evidence", civ->defendant_evidence);
    return out;
  }
  if (auto* cr = std::get_if<CriminalPartyPayload>(&payload)) {
    if (cr->defendant) {
      append_attributes(out, cr->defendant->attributes, "Defendant");
      if (!cr->defendant->occupation.empty())
        out += "Occupation: " + cr->defendant->occupation + "\n";
      if (!cr->defendant->education.empty()) out += "Education: " + cr->defendant->education + "\n";
      if (!cr->defendant->custody_status.empty())
        out += "Custody status: " + cr->defendant->custody_status + "\n";
    }
    if (cr->plea_statement) out += "Position on the charges: " + *cr->plea_statement + "\n";
    if (cr->lawyer_defence) out += "Defence position: " + *cr->lawyer_defence + "\n";
    append_list(out, "Charges", cr->charges);
    if (cr->procurator_opinion) out += "Procuratorial opinion: " + *cr->procurator_opinion + "\n";
    return out;
  }
  return out;
}

}  // namespace

std::vector<ChatMessage> Environment::assemble_prompt(const std::string& role_id,
                                                      const std::vector<Turn>& history) const {
  auto it = config_.participants.find(role_id);
  if (it == config_.participants.end())
    throw ConfigError("unknown participant '" + role_id + "'");
  const RoleProfile& profile = it->second;

  std::string system = "You are participant '" + role_id + "' in a simulated legal session.\n";
  if (profile.attributes) {
    std::string identity;
    append_attributes(identity, *profile.attributes, "Your identity");
    system += identity;
  }
  std::string payload = render_payload(profile.payload);
  if (!payload.empty()) system += "Your information:\n" + payload;
  if (profile.behavioral_style) system += "Your talking style: " + *profile.behavioral_style + "\n";
  if (config_.env_kind == EnvKind::CivilCourt || config_.env_kind == EnvKind::CriminalCourt) {
    system += "Participants: ";
    bool first = true;
    for (const auto& [id, p] : config_.participants) {
      if (!first) system += ", ";
      system += id + " (" + to_code(p.role_kind) + ")";
      first = false;
    }
    system += "\n";
  }
  system += "Rules:\n" + prompts::environment_rules(config_.env_kind, profile.role_kind);

  std::vector<ChatMessage> messages{{ChatRole::System, system}};
  std::size_t start = 0;
  if (options_.history_window > 0 && history.size() > options_.history_window)
    start = history.size() - options_.history_window;
  for (std::size_t i = start; i < history.size(); ++i) {
    const Turn& turn = history[i];
    if (turn.speaker == role_id) {
      messages.push_back({ChatRole::Assistant, turn.content});
    } else {
      messages.push_back({ChatRole::User, "[" + turn.speaker + "] " + turn.content});
    }
  }
  if (messages.size() == 1) messages.push_back({ChatRole::User, "(You speak first. Begin.)"});
  return messages;
}

std::string Environment::addressee_for(const std::string& speaker,
                                       const std::string& content) const {
  const bool court =
      config_.env_kind == EnvKind::CivilCourt || config_.env_kind == EnvKind::CriminalCourt;
  if (!court) return two_party_partner(speaker);
  std::string judge_id = role_of_kind(RoleKind::Judge);
  if (speaker != judge_id) return judge_id;
  if (auto target = parse_addressee_directive(content))
    if (config_.participants.count(*target) && *target != judge_id) return *target;
  return kBroadcast;
}

std::string Environment::route_next(const Turn& last_turn) {
  const bool court =
      config_.env_kind == EnvKind::CivilCourt || config_.env_kind == EnvKind::CriminalCourt;
  if (!court) return two_party_partner(last_turn.speaker);

  std::string judge_id = role_of_kind(RoleKind::Judge);
  if (last_turn.speaker != judge_id) return judge_id;  // parties always yield back

  if (auto target = parse_addressee_directive(last_turn.content))
    if (config_.participants.count(*target) && *target != judge_id) return *target;

  // No parseable directive: classify, then fall back to the stage default.
  std::vector<std::string> other_roles;
  for (const auto& [id, p] : config_.participants)
    if (id != judge_id) other_roles.push_back(id);
  if (judge_) {
    try {
      auto verdict = judge_->evaluate(rubrics::addressee(last_turn.content, other_roles));
      if (verdict.label != "none" && config_.participants.count(verdict.label))
        return verdict.label;
    } catch (const JudgeError&) {
      // fall through to the default table
    }
  }
  RoleKind fallback = procedures::default_addressee_kind(
      config_.env_kind, state_.current_stage.value_or(std::string{}));
  std::string id = role_of_kind(fallback);
  return id.empty() ? other_roles.front() : id;
}

void Environment::observe_level1_turn(Turn& turn) {
  const auto& topics = std::get<TopicList>(config_.ground_truth);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& t : topics.topics) pairs.emplace_back(t.id, t.question);
  // The round is the latest question plus this answer.
  std::string round_text =
      last_question_ ? *last_question_ + "\n" + turn.content : turn.content;
  if (!judge_) {
    turn.topic_tag = "unresolved";
    ++state_.unresolved_rounds;
    return;
  }
  try {
    if (auto id = metrics::label_round(round_text, pairs, *judge_)) {
      turn.topic_tag = id;
      state_.topics_remaining.erase(*id);
    }
  } catch (const JudgeError&) {
    turn.topic_tag = "unresolved";
    ++state_.unresolved_rounds;
  }
}

void Environment::observe_court_turn(Turn& turn) {
  turn.stage_tag = state_.current_stage;
  std::string judge_id = role_of_kind(RoleKind::Judge);
  if (turn.speaker != judge_id) return;

  for (std::size_t s = 0; s < procedure_.stages.size(); ++s)
    for (const auto& action : procedure_.stages[s].actions)
      if (metrics::action_matches(action, turn.content)) observed_[s].insert(action.action_id);

  // Advance through every stage whose mandatory actions are all observed.
  while (stage_index_ + 1 < procedure_.stages.size()) {
    const auto& stage = procedure_.stages[stage_index_];
    bool complete = std::all_of(stage.actions.begin(), stage.actions.end(),
                                [&](const ProcedureAction& a) {
                                  return observed_[stage_index_].count(a.action_id) > 0;
                                });
    if (!complete) break;
    ++stage_index_;
    state_.current_stage = procedure_.stages[stage_index_].stage_id;
  }

  if (auto judgment = detect_judgment(turn.content, config_.env_kind)) {
    artifact_ = *judgment;
    state_.judgment_emitted = true;
  }
}

void Environment::observe(Turn& turn) {
  state_.turn_count = turn.index + 1;
  switch (config_.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: {
      if (turn.speaker == initiator()) {
        last_question_ = turn.content;
      } else {
        observe_level1_turn(turn);
      }
      break;
    }
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting: {
      if (turn.speaker == role_of_kind(RoleKind::LegalAgent)) {
        auto scan = detect_document(turn.content);
        if (scan.malformed) state_.malformed_document_seen = true;
        if (scan.document) {
          artifact_ = DocumentArtifact{*scan.document};
          state_.document_emitted = true;
        }
      }
      break;
    }
    case EnvKind::CivilCourt:
    case EnvKind::CriminalCourt:
      observe_court_turn(turn);
      break;
  }
}

std::optional<Termination> Environment::is_terminated() const {
  switch (config_.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation:
      if (state_.topics_remaining.empty()) return Termination::Completed;
      break;
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting:
      if (state_.document_emitted) return Termination::Completed;
      break;
    case EnvKind::CivilCourt:
    case EnvKind::CriminalCourt:
      if (state_.judgment_emitted) return Termination::Completed;
      break;
  }
  if (state_.turn_count >= config_.max_turns) return Termination::MaxTurnsExceeded;
  return std::nullopt;
}

}  // namespace legalsim::envs
