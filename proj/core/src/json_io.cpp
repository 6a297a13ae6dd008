#include "legalsim/json_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace legalsim {

namespace {

template <typename T>
T enum_field(const JsonReader& r, const std::string& key,
             std::optional<T> (*decoder)(std::string_view), const char* domain) {
  auto code = r.string_field(key);
  auto v = decoder(code);
  if (!v) throw ParseError(r.path() + "." + key, "unknown " + std::string(domain) + " '" + code + "'");
  return *v;
}

void check_schema_version(const JsonReader& r) {
  if (!r.has("schema_version")) return;  // tolerated on embedded objects
  auto v = r.at("schema_version").get_int();
  if (v != kSchemaVersion)
    r.at("schema_version").fail("unsupported schema_version " + std::to_string(v));
}

void require_valid(const JsonReader& r, const std::vector<std::string>& violations) {
  if (!violations.empty()) r.fail(violations.front());
}

}  // namespace

// ---------------------------------------------------------------------------
// JsonReader
// ---------------------------------------------------------------------------

bool JsonReader::has(const std::string& key) const {
  return j_->is_object() && j_->contains(key) && !(*j_)[key].is_null();
}

JsonReader JsonReader::at(const std::string& key) const {
  if (!j_->is_object()) fail("expected object");
  if (!j_->contains(key)) fail("missing required field '" + key + "'");
  return JsonReader((*j_)[key], path_ + "." + key);
}

JsonReader JsonReader::at(std::size_t index) const {
  if (!j_->is_array()) fail("expected array");
  if (index >= j_->size()) fail("index " + std::to_string(index) + " out of range");
  return JsonReader((*j_)[index], path_ + "[" + std::to_string(index) + "]");
}

std::size_t JsonReader::array_size() const {
  if (!j_->is_array()) fail("expected array");
  return j_->size();
}

std::string JsonReader::get_string() const {
  if (!j_->is_string()) fail("expected string");
  return j_->get<std::string>();
}

std::int64_t JsonReader::get_int() const {
  if (!j_->is_number_integer()) fail("expected integer");
  return j_->get<std::int64_t>();
}

std::uint64_t JsonReader::get_uint() const {
  if (j_->is_number_unsigned()) return j_->get<std::uint64_t>();
  if (j_->is_number_integer()) {
    auto v = j_->get<std::int64_t>();
    if (v < 0) fail("expected non-negative integer");
    return static_cast<std::uint64_t>(v);
  }
  fail("expected integer");
}

double JsonReader::get_double() const {
  if (!j_->is_number()) fail("expected number");
  return j_->get<double>();
}

bool JsonReader::get_bool() const {
  if (!j_->is_boolean()) fail("expected boolean");
  return j_->get<bool>();
}

std::string JsonReader::string_field(const std::string& key) const {
  return at(key).get_string();
}

std::string JsonReader::string_field_or(const std::string& key,
                                        const std::string& fallback) const {
  return has(key) ? at(key).get_string() : fallback;
}

std::optional<std::string> JsonReader::opt_string_field(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return at(key).get_string();
}

std::int64_t JsonReader::int_field(const std::string& key) const { return at(key).get_int(); }

std::int64_t JsonReader::int_field_or(const std::string& key, std::int64_t fallback) const {
  return has(key) ? at(key).get_int() : fallback;
}

std::vector<std::string> JsonReader::string_array_field(const std::string& key) const {
  auto arr = at(key);
  std::vector<std::string> out;
  out.reserve(arr.array_size());
  for (std::size_t i = 0; i < arr.array_size(); ++i) out.push_back(arr.at(i).get_string());
  return out;
}

std::vector<std::string> JsonReader::string_array_field_or(const std::string& key) const {
  if (!has(key)) return {};
  return string_array_field(key);
}

// ---------------------------------------------------------------------------
// to_json
// ---------------------------------------------------------------------------

Json to_json(const PersonalityTraits& t) {
  return Json{{"extraversion", to_code(t.extraversion)},
              {"emotional_stability", to_code(t.emotional_stability)},
              {"openness", to_code(t.openness)},
              {"agreeableness", to_code(t.agreeableness)},
              {"conscientiousness", to_code(t.conscientiousness)}};
}

Json to_json(const PersonAttributes& a) {
  Json j{{"name", a.name},
         {"gender", to_code(a.gender)},
         {"ethnicity", a.ethnicity},
         {"birthdate", a.birthdate},
         {"address", a.address},
         {"entity_kind", to_code(a.entity_kind)}};
  if (a.representative_name) j["representative_name"] = *a.representative_name;
  return j;
}

Json to_json(const TopicItem& t) {
  return Json{{"id", t.id},
              {"kind", to_code(t.kind)},
              {"question", t.question},
              {"ground_truth", t.ground_truth},
              {"ground_truth_kind", to_code(t.ground_truth_kind)}};
}

Json to_json(const TopicList& l) {
  Json j{{"theme", l.theme}};
  if (l.background) j["background"] = *l.background;
  if (l.occupation) j["occupation"] = *l.occupation;
  Json topics = Json::array();
  for (const auto& t : l.topics) topics.push_back(to_json(t));
  j["topics"] = std::move(topics);
  return j;
}

Json to_json(const TopicPromptList& l) {
  Json j{{"theme", l.theme}};
  if (l.background) j["background"] = *l.background;
  Json topics = Json::array();
  for (const auto& t : l.topics)
    topics.push_back(Json{{"id", t.id}, {"kind", to_code(t.kind)}, {"question", t.question}});
  j["topics"] = std::move(topics);
  return j;
}

Json to_json(const CivilCaseElements& e) {
  return Json{{"plaintiff", to_json(e.plaintiff)},
              {"defendant", to_json(e.defendant)},
              {"claims", e.claims},
              {"case_details", e.case_details},
              {"defence_statement", e.defence_statement},
              {"plaintiff_evidence", e.plaintiff_evidence},
              {"defendant_evidence", e.defendant_evidence},
              {"court_judgment", e.court_judgment},
              {"court_findings", e.court_findings},
              {"applied_laws", e.applied_laws}};
}

Json to_json(const CriminalDefendant& d) {
  return Json{{"attributes", to_json(d.attributes)},
              {"occupation", d.occupation},
              {"education", d.education},
              {"custody_status", d.custody_status}};
}

Json to_json(const CriminalCaseElements& e) {
  return Json{{"defendant", to_json(e.defendant)},
              {"plea_statement", e.plea_statement},
              {"lawyer_defence", e.lawyer_defence},
              {"charges", e.charges},
              {"procurator_opinion", e.procurator_opinion},
              {"verdict_crime", e.verdict_crime},
              {"verdict_sentence_months", e.verdict_sentence_months},
              {"verdict_fine_amount", e.verdict_fine_amount},
              {"court_findings", e.court_findings},
              {"applied_laws", e.applied_laws}};
}

Json to_json(const CivilPartyPayload& p) {
  Json j = Json::object();
  if (p.plaintiff) j["plaintiff"] = to_json(*p.plaintiff);
  if (p.defendant) j["defendant"] = to_json(*p.defendant);
  if (!p.claims.empty()) j["claims"] = p.claims;
  if (p.case_details) j["case_details"] = *p.case_details;
  if (p.defence_statement) j["defence_statement"] = *p.defence_statement;
  if (!p.plaintiff_evidence.empty()) j["plaintiff_evidence"] = p.plaintiff_evidence;
  if (!p.defendant_evidence.empty()) j["defendant_evidence"] = p.defendant_evidence;
  return j;
}

Json to_json(const CriminalPartyPayload& p) {
  Json j = Json::object();
  if (p.defendant) j["defendant"] = to_json(*p.defendant);
  if (p.plea_statement) j["plea_statement"] = *p.plea_statement;
  if (p.lawyer_defence) j["lawyer_defence"] = *p.lawyer_defence;
  if (!p.charges.empty()) j["charges"] = p.charges;
  if (p.procurator_opinion) j["procurator_opinion"] = *p.procurator_opinion;
  return j;
}

Json to_json(const RolePayload& p) {
  if (std::holds_alternative<std::monostate>(p)) return Json{{"kind", "none"}};
  if (auto* t = std::get_if<TopicPromptList>(&p))
    return Json{{"kind", "topics"}, {"value", to_json(*t)}};
  if (auto* c = std::get_if<CivilPartyPayload>(&p))
    return Json{{"kind", "civil_party"}, {"value", to_json(*c)}};
  return Json{{"kind", "criminal_party"}, {"value", to_json(std::get<CriminalPartyPayload>(p))}};
}

Json to_json(const RoleProfile& p) {
  Json j{{"schema_version", kSchemaVersion},
         {"role_id", p.role_id},
         {"role_kind", to_code(p.role_kind)}};
  if (p.attributes) j["attributes"] = to_json(*p.attributes);
  if (p.traits) j["traits"] = to_json(*p.traits);
  if (p.behavioral_style) j["behavioral_style"] = *p.behavioral_style;
  j["payload"] = to_json(p.payload);
  return j;
}

Json to_json(const GroundTruth& g) {
  if (auto* t = std::get_if<TopicList>(&g)) return Json{{"kind", "topics"}, {"value", to_json(*t)}};
  if (auto* c = std::get_if<CivilCaseElements>(&g))
    return Json{{"kind", "civil_case"}, {"value", to_json(*c)}};
  return Json{{"kind", "criminal_case"}, {"value", to_json(std::get<CriminalCaseElements>(g))}};
}

Json to_json(const EpisodeConfig& c) {
  Json participants = Json::object();
  for (const auto& [id, profile] : c.participants) {
    Json p = to_json(profile);
    p.erase("schema_version");
    participants[id] = std::move(p);
  }
  return Json{{"schema_version", kSchemaVersion},
              {"episode_id", c.episode_id},
              {"env_kind", to_code(c.env_kind)},
              {"participants", std::move(participants)},
              {"ground_truth", to_json(c.ground_truth)},
              {"max_turns", c.max_turns},
              {"seed", c.seed}};
}

Json to_json(const Turn& t) {
  Json j{{"index", t.index},
         {"speaker", t.speaker},
         {"addressee", t.addressee},
         {"content", t.content}};
  if (t.stage_tag) j["stage_tag"] = *t.stage_tag;
  if (t.topic_tag) j["topic_tag"] = *t.topic_tag;
  j["timestamp_ms"] = t.timestamp_ms;
  return j;
}

Json to_json(const StructuredJudgment& sj) {
  Json j;
  if (auto* civ = std::get_if<CivilJudgment>(&sj.body)) {
    j = Json{{"court", "civil"},
             {"ruling_text", civ->ruling_text},
             {"reasoning", civ->reasoning},
             {"cited_laws", civ->cited_laws}};
  } else {
    const auto& cr = std::get<CriminalJudgment>(sj.body);
    j = Json{{"court", "criminal"},
             {"crime", cr.crime},
             {"sentence_months", cr.sentence_months},
             {"fine_amount", cr.fine_amount},
             {"reasoning", cr.reasoning},
             {"cited_laws", cr.cited_laws}};
  }
  j["unparseable"] = sj.unparseable;
  return j;
}

Json to_json(const TerminalArtifact& a) {
  if (std::holds_alternative<std::monostate>(a)) return Json{{"kind", "none"}};
  if (auto* d = std::get_if<DocumentArtifact>(&a))
    return Json{{"kind", "document"}, {"text", d->text}};
  return Json{{"kind", "judgment"}, {"value", to_json(std::get<StructuredJudgment>(a))}};
}

Json to_json(const Transcript& t) {
  Json turns = Json::array();
  for (const auto& turn : t.turns) turns.push_back(to_json(turn));
  return Json{{"schema_version", kSchemaVersion},
              {"episode_id", t.episode_id},
              {"env_kind", to_code(t.env_kind)},
              {"turns", std::move(turns)},
              {"terminal_artifact", to_json(t.terminal_artifact)},
              {"termination", to_code(t.termination)}};
}

Json to_json(const ProcedureAction& a) {
  return Json{{"action_id", a.action_id},
              {"description", a.description},
              {"match_patterns", a.match_patterns}};
}

Json to_json(const ProcedureStage& s) {
  Json actions = Json::array();
  for (const auto& a : s.actions) actions.push_back(to_json(a));
  return Json{{"stage_id", s.stage_id}, {"stage_name", s.stage_name}, {"actions", std::move(actions)}};
}

Json to_json(const ProcedureSpec& s) {
  Json stages = Json::array();
  for (const auto& st : s.stages) stages.push_back(to_json(st));
  return Json{{"schema_version", kSchemaVersion},
              {"env_kind", to_code(s.env_kind)},
              {"stages", std::move(stages)}};
}

Json to_json(const ScoreCard& c) {
  return Json{{"schema_version", kSchemaVersion},
              {"episode_id", c.episode_id},
              {"env_kind", to_code(c.env_kind)},
              {"metrics", c.metrics},
              {"sub_scores", c.sub_scores},
              {"normalized", c.normalized},
              {"unavailable", c.unavailable}};
}

// ---------------------------------------------------------------------------
// from_json
// ---------------------------------------------------------------------------

PersonalityTraits traits_from_json(const JsonReader& r) {
  PersonalityTraits t;
  t.extraversion = enum_field(r, "extraversion", trait_level_from_code, "trait level");
  t.emotional_stability =
      enum_field(r, "emotional_stability", trait_level_from_code, "trait level");
  t.openness = enum_field(r, "openness", trait_level_from_code, "trait level");
  t.agreeableness = enum_field(r, "agreeableness", trait_level_from_code, "trait level");
  t.conscientiousness = enum_field(r, "conscientiousness", trait_level_from_code, "trait level");
  return t;
}

PersonAttributes attributes_from_json(const JsonReader& r) {
  PersonAttributes a;
  a.name = r.string_field("name");
  a.gender = enum_field(r, "gender", gender_from_code, "gender");
  a.ethnicity = r.string_field_or("ethnicity", "");
  a.birthdate = r.string_field_or("birthdate", "");
  a.address = r.string_field_or("address", "");
  a.entity_kind = enum_field(r, "entity_kind", entity_kind_from_code, "entity kind");
  a.representative_name = r.opt_string_field("representative_name");
  require_valid(r, validate_attributes(a));
  return a;
}

TopicItem topic_item_from_json(const JsonReader& r) {
  TopicItem t;
  t.id = r.string_field("id");
  t.kind = enum_field(r, "kind", topic_kind_from_code, "topic kind");
  t.question = r.string_field("question");
  t.ground_truth = r.string_field("ground_truth");
  t.ground_truth_kind =
      enum_field(r, "ground_truth_kind", ground_truth_kind_from_code, "ground truth kind");
  require_valid(r, validate_topic_item(t));
  return t;
}

TopicList topic_list_from_json(const JsonReader& r) {
  TopicList l;
  l.theme = r.string_field("theme");
  l.background = r.opt_string_field("background");
  l.occupation = r.opt_string_field("occupation");
  auto topics = r.at("topics");
  for (std::size_t i = 0; i < topics.array_size(); ++i)
    l.topics.push_back(topic_item_from_json(topics.at(i)));
  require_valid(r, validate_topic_list(l));
  return l;
}

TopicPromptList topic_prompt_list_from_json(const JsonReader& r) {
  TopicPromptList l;
  l.theme = r.string_field("theme");
  l.background = r.opt_string_field("background");
  auto topics = r.at("topics");
  for (std::size_t i = 0; i < topics.array_size(); ++i) {
    auto tr = topics.at(i);
    TopicPromptItem item;
    item.id = tr.string_field("id");
    item.kind = enum_field(tr, "kind", topic_kind_from_code, "topic kind");
    item.question = tr.string_field("question");
    l.topics.push_back(std::move(item));
  }
  return l;
}

CivilCaseElements civil_elements_from_json(const JsonReader& r) {
  CivilCaseElements e;
  e.plaintiff = attributes_from_json(r.at("plaintiff"));
  e.defendant = attributes_from_json(r.at("defendant"));
  e.claims = r.string_array_field("claims");
  e.case_details = r.string_field_or("case_details", "");
  e.defence_statement = r.string_field_or("defence_statement", "");
  e.plaintiff_evidence = r.string_array_field_or("plaintiff_evidence");
  e.defendant_evidence = r.string_array_field_or("defendant_evidence");
  e.court_judgment = r.string_field_or("court_judgment", "");
  e.court_findings = r.string_field_or("court_findings", "");
  e.applied_laws = r.string_array_field_or("applied_laws");
  require_valid(r, validate_civil_elements(e));
  return e;
}

CriminalDefendant criminal_defendant_from_json(const JsonReader& r) {
  CriminalDefendant d;
  d.attributes = attributes_from_json(r.at("attributes"));
  d.occupation = r.string_field_or("occupation", "");
  d.education = r.string_field_or("education", "");
  d.custody_status = r.string_field_or("custody_status", "");
  return d;
}

CriminalCaseElements criminal_elements_from_json(const JsonReader& r) {
  CriminalCaseElements e;
  e.defendant = criminal_defendant_from_json(r.at("defendant"));
  e.plea_statement = r.string_field_or("plea_statement", "");
  e.lawyer_defence = r.string_field_or("lawyer_defence", "");
  e.charges = r.string_array_field("charges");
  e.procurator_opinion = r.string_field_or("procurator_opinion", "");
  e.verdict_crime = r.string_field("verdict_crime");
  e.verdict_sentence_months = r.int_field("verdict_sentence_months");
  e.verdict_fine_amount = r.int_field("verdict_fine_amount");
  e.court_findings = r.string_field_or("court_findings", "");
  e.applied_laws = r.string_array_field_or("applied_laws");
  require_valid(r, validate_criminal_elements(e));
  return e;
}

CivilPartyPayload civil_payload_from_json(const JsonReader& r) {
  CivilPartyPayload p;
  if (r.has("plaintiff")) p.plaintiff = attributes_from_json(r.at("plaintiff"));
  if (r.has("defendant")) p.defendant = attributes_from_json(r.at("defendant"));
  p.claims = r.string_array_field_or("claims");
  p.case_details = r.opt_string_field("case_details");
  p.defence_statement = r.opt_string_field("defence_statement");
  p.plaintiff_evidence = r.string_array_field_or("plaintiff_evidence");
  p.defendant_evidence = r.string_array_field_or("defendant_evidence");
  return p;
}

CriminalPartyPayload criminal_payload_from_json(const JsonReader& r) {
  CriminalPartyPayload p;
  if (r.has("defendant")) p.defendant = criminal_defendant_from_json(r.at("defendant"));
  p.plea_statement = r.opt_string_field("plea_statement");
  p.lawyer_defence = r.opt_string_field("lawyer_defence");
  p.charges = r.string_array_field_or("charges");
  p.procurator_opinion = r.opt_string_field("procurator_opinion");
  return p;
}

RolePayload payload_from_json(const JsonReader& r) {
  auto kind = r.string_field("kind");
  if (kind == "none") return std::monostate{};
  if (kind == "topics") return topic_prompt_list_from_json(r.at("value"));
  if (kind == "civil_party") return civil_payload_from_json(r.at("value"));
  if (kind == "criminal_party") return criminal_payload_from_json(r.at("value"));
  r.at("kind").fail("unknown payload kind '" + kind + "'");
}

RoleProfile profile_from_json(const JsonReader& r) {
  check_schema_version(r);
  RoleProfile p;
  p.role_id = r.string_field("role_id");
  p.role_kind = enum_field(r, "role_kind", role_kind_from_code, "role kind");
  if (r.has("attributes")) p.attributes = attributes_from_json(r.at("attributes"));
  if (r.has("traits")) p.traits = traits_from_json(r.at("traits"));
  p.behavioral_style = r.opt_string_field("behavioral_style");
  p.payload = r.has("payload") ? payload_from_json(r.at("payload")) : RolePayload{};
  return p;
}

GroundTruth ground_truth_from_json(const JsonReader& r) {
  auto kind = r.string_field("kind");
  if (kind == "topics") return topic_list_from_json(r.at("value"));
  if (kind == "civil_case") return civil_elements_from_json(r.at("value"));
  if (kind == "criminal_case") return criminal_elements_from_json(r.at("value"));
  r.at("kind").fail("unknown ground truth kind '" + kind + "'");
}

EpisodeConfig episode_config_from_json(const JsonReader& r) {
  check_schema_version(r);
  EpisodeConfig c;
  c.episode_id = r.string_field("episode_id");
  c.env_kind = enum_field(r, "env_kind", env_kind_from_code, "env_kind");
  auto parts = r.at("participants");
  if (!parts.raw().is_object()) parts.fail("expected object");
  for (auto it = parts.raw().begin(); it != parts.raw().end(); ++it) {
    auto pr = parts.at(it.key());
    auto profile = profile_from_json(pr);
    if (profile.role_id != it.key())
      pr.fail("role_id '" + profile.role_id + "' does not match participant key '" + it.key() + "'");
    c.participants.emplace(it.key(), std::move(profile));
  }
  c.ground_truth = ground_truth_from_json(r.at("ground_truth"));
  c.max_turns = static_cast<int>(r.int_field_or("max_turns", 0));
  if (c.max_turns == 0) c.max_turns = default_max_turns(c.env_kind);
  if (c.max_turns < 1) r.at("max_turns").fail("max_turns must be positive");
  c.seed = r.has("seed") ? r.at("seed").get_uint() : 0;
  if (!ground_truth_matches_env(c))
    r.at("ground_truth").fail("ground truth kind does not match env_kind " + to_code(c.env_kind));
  return c;
}

Turn turn_from_json(const JsonReader& r) {
  Turn t;
  t.index = static_cast<int>(r.int_field("index"));
  t.speaker = r.string_field("speaker");
  t.addressee = r.string_field_or("addressee", kBroadcast);
  t.content = r.string_field("content");
  t.stage_tag = r.opt_string_field("stage_tag");
  t.topic_tag = r.opt_string_field("topic_tag");
  t.timestamp_ms = r.int_field_or("timestamp_ms", 0);
  return t;
}

StructuredJudgment judgment_from_json(const JsonReader& r) {
  StructuredJudgment sj;
  auto court = r.string_field("court");
  if (court == "civil") {
    CivilJudgment c;
    c.ruling_text = r.string_field_or("ruling_text", "");
    c.reasoning = r.string_field_or("reasoning", "");
    c.cited_laws = r.string_array_field_or("cited_laws");
    sj.body = std::move(c);
  } else if (court == "criminal") {
    CriminalJudgment c;
    c.crime = r.string_field_or("crime", "");
    c.sentence_months = r.int_field_or("sentence_months", 0);
    c.fine_amount = r.int_field_or("fine_amount", 0);
    c.reasoning = r.string_field_or("reasoning", "");
    c.cited_laws = r.string_array_field_or("cited_laws");
    sj.body = std::move(c);
  } else {
    r.at("court").fail("unknown court '" + court + "'");
  }
  if (r.has("unparseable")) sj.unparseable = r.at("unparseable").get_bool();
  return sj;
}

TerminalArtifact artifact_from_json(const JsonReader& r) {
  auto kind = r.string_field("kind");
  if (kind == "none") return std::monostate{};
  if (kind == "document") return DocumentArtifact{r.string_field("text")};
  if (kind == "judgment") return judgment_from_json(r.at("value"));
  r.at("kind").fail("unknown artifact kind '" + kind + "'");
}

Transcript transcript_from_json(const JsonReader& r) {
  check_schema_version(r);
  Transcript t;
  t.episode_id = r.string_field("episode_id");
  t.env_kind = enum_field(r, "env_kind", env_kind_from_code, "env_kind");
  auto turns = r.at("turns");
  for (std::size_t i = 0; i < turns.array_size(); ++i)
    t.turns.push_back(turn_from_json(turns.at(i)));
  t.terminal_artifact = r.has("terminal_artifact") ? artifact_from_json(r.at("terminal_artifact"))
                                                   : TerminalArtifact{};
  t.termination = enum_field(r, "termination", termination_from_code, "termination");
  require_valid(r, validate_transcript(t));
  return t;
}

ProcedureSpec procedure_from_json(const JsonReader& r) {
  check_schema_version(r);
  ProcedureSpec s;
  s.env_kind = enum_field(r, "env_kind", env_kind_from_code, "env_kind");
  auto stages = r.at("stages");
  for (std::size_t i = 0; i < stages.array_size(); ++i) {
    auto sr = stages.at(i);
    ProcedureStage stage;
    stage.stage_id = sr.string_field("stage_id");
    stage.stage_name = sr.string_field("stage_name");
    auto actions = sr.at("actions");
    for (std::size_t k = 0; k < actions.array_size(); ++k) {
      auto ar = actions.at(k);
      ProcedureAction action;
      action.action_id = ar.string_field("action_id");
      action.description = ar.string_field_or("description", "");
      action.match_patterns = ar.string_array_field("match_patterns");
      stage.actions.push_back(std::move(action));
    }
    s.stages.push_back(std::move(stage));
  }
  require_valid(r, validate_procedure(s));
  return s;
}

namespace {

std::map<std::string, double> double_map_field(const JsonReader& r, const std::string& key) {
  std::map<std::string, double> out;
  if (!r.has(key)) return out;
  auto m = r.at(key);
  if (!m.raw().is_object()) m.fail("expected object");
  for (auto it = m.raw().begin(); it != m.raw().end(); ++it)
    out[it.key()] = m.at(it.key()).get_double();
  return out;
}

}  // namespace

ScoreCard score_card_from_json(const JsonReader& r) {
  check_schema_version(r);
  ScoreCard c;
  c.episode_id = r.string_field("episode_id");
  c.env_kind = enum_field(r, "env_kind", env_kind_from_code, "env_kind");
  c.metrics = double_map_field(r, "metrics");
  c.sub_scores = double_map_field(r, "sub_scores");
  c.normalized = double_map_field(r, "normalized");
  if (r.has("unavailable")) {
    auto m = r.at("unavailable");
    for (auto it = m.raw().begin(); it != m.raw().end(); ++it)
      c.unavailable[it.key()] = m.at(it.key()).get_string();
  }
  require_valid(r, validate_score_card(c));
  return c;
}

// ---------------------------------------------------------------------------
// helpers
// ---------------------------------------------------------------------------

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  auto j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("$", "invalid JSON document");
  return j;
}

EpisodeConfig parse_episode_config(const std::string& text) {
  auto j = parse_json(text);
  return episode_config_from_json(JsonReader(j));
}

Transcript parse_transcript(const std::string& text) {
  auto j = parse_json(text);
  return transcript_from_json(JsonReader(j));
}

ScoreCard parse_score_card(const std::string& text) {
  auto j = parse_json(text);
  return score_card_from_json(JsonReader(j));
}

ProcedureSpec parse_procedure(const std::string& text) {
  auto j = parse_json(text);
  return procedure_from_json(JsonReader(j));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace legalsim
