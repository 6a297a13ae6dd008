#include "legalsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "legalsim/json_io.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/text.hpp"

namespace legalsim::metrics {

// ln(101) pinned as a hex literal; computing it through libm at runtime
// can differ in the last ulp across C libraries, which would break
// byte-identical reruns of failure-case score cards.
const double kDefaultVerCap = 0x1.275e2271bba31p+2;

// ---------------------------------------------------------------------------
// format templates
// ---------------------------------------------------------------------------

namespace {

FormatTemplate build_template(DocKind kind, std::vector<std::string> labels) {
  FormatTemplate t;
  t.doc_kind = kind;
  t.labels = std::move(labels);
  for (const auto& l : t.labels) t.label_patterns[l] = {l};
  return t;
}

}  // namespace

const FormatTemplate& complaint_template() {
  static const FormatTemplate t = build_template(
      DocKind::Complaint,
      {"Plaintiff", "Defendant", "Claims", "Facts and Legal Grounds",
       "Evidence and Sources, Names and Addresses of Witnesses"});
  return t;
}

const FormatTemplate& defence_template() {
  static const FormatTemplate t = build_template(
      DocKind::Defence,
      {"Defendant", "Defence Arguments", "Case Id", "Parties and Cause of Action",
       "Evidence and Sources, Names and Addresses of Witnesses"});
  return t;
}

const FormatTemplate& template_for(EnvKind env) {
  if (env == EnvKind::ComplaintDrafting) return complaint_template();
  if (env == EnvKind::DefenceDrafting) return defence_template();
  throw std::invalid_argument("no document template for env " + to_code(env));
}

namespace {

// A label line is "<label>:" (case-insensitive, optional list numbering).
// Returns the matched label, longest match winning.
std::optional<std::string> match_label_line(const std::string& line, const FormatTemplate& tmpl) {
  std::string stripped = text::trim(line);
  // strip leading numbering like "3." or "(2)"
  std::size_t i = 0;
  while (i < stripped.size() &&
         (std::isdigit(static_cast<unsigned char>(stripped[i])) || stripped[i] == '(' ||
          stripped[i] == ')' || stripped[i] == '.'))
    ++i;
  std::string body = text::lower(text::trim(stripped.substr(i)));
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [label, patterns] : tmpl.label_patterns) {
    for (const auto& p : patterns) {
      std::string pat = text::lower(p);
      if (!text::starts_with(body, pat)) continue;
      std::string rest = text::trim(body.substr(pat.size()));
      if (rest.empty() || rest[0] != ':') continue;
      if (pat.size() > best_len) {
        best_len = pat.size();
        best = &label;
      }
    }
  }
  if (best) return *best;
  return std::nullopt;
}

}  // namespace

std::vector<std::string> recognize_labels(const std::string& document,
                                          const FormatTemplate& tmpl) {
  std::vector<std::string> in_order;
  std::set<std::string> seen;
  for (const auto& line : text::split(document, '\n')) {
    if (auto label = match_label_line(line, tmpl)) {
      if (seen.insert(*label).second) in_order.push_back(*label);
    }
  }
  return in_order;
}

std::map<std::string, std::string> split_components(const std::string& document,
                                                    const FormatTemplate& tmpl) {
  std::map<std::string, std::string> out;
  std::string current;
  for (const auto& line : text::split(document, '\n')) {
    if (auto label = match_label_line(line, tmpl)) {
      if (!out.count(*label)) {
        current = *label;
        // content on the label line itself, after the colon
        auto pos = line.find(':');
        std::string inline_text = pos == std::string::npos ? "" : text::trim(line.substr(pos + 1));
        out[current] = inline_text;
        continue;
      }
      current.clear();  // duplicate label: ignore its section
      continue;
    }
    if (!current.empty()) {
      auto& block = out[current];
      if (!block.empty()) block += "\n";
      block += line;
    }
  }
  for (auto& [label, block] : out) block = text::trim(block);
  return out;
}

ForScore score_for(const std::string& document, const FormatTemplate& tmpl) {
  ForScore s;
  if (text::trim(document).empty()) return s;
  auto recognized = recognize_labels(document, tmpl);
  s.label = tmpl.labels.empty()
                ? 0.0
                : static_cast<double>(recognized.size()) / static_cast<double>(tmpl.labels.size());
  // Order check: positions in the template must be increasing. The empty
  // sequence is trivially in order.
  s.seq = 1.0;
  int last = -1;
  for (const auto& label : recognized) {
    auto it = std::find(tmpl.labels.begin(), tmpl.labels.end(), label);
    int pos = static_cast<int>(it - tmpl.labels.begin());
    if (pos < last) {
      s.seq = 0.0;
      break;
    }
    last = pos;
  }
  s.value = s.seq * s.label;
  return s;
}

// ---------------------------------------------------------------------------
// action matching & PFS
// ---------------------------------------------------------------------------

bool action_matches(const ProcedureAction& action, const std::string& content) {
  std::string haystack = text::normalize_for_match(content);
  for (const auto& p : action.match_patterns) {
    std::string needle = text::normalize_for_match(p);
    if (!needle.empty() && haystack.find(needle) != std::string::npos) return true;
  }
  return false;
}

ActionMatchTable match_actions(const ProcedureSpec& procedure, const std::vector<Turn>& turns,
                               const std::string& judge_role_id) {
  ActionMatchTable table;
  table.turn_indices.resize(procedure.stages.size());
  for (std::size_t s = 0; s < procedure.stages.size(); ++s)
    table.turn_indices[s].resize(procedure.stages[s].actions.size());
  for (const auto& turn : turns) {
    if (turn.speaker != judge_role_id) continue;
    for (std::size_t s = 0; s < procedure.stages.size(); ++s)
      for (std::size_t a = 0; a < procedure.stages[s].actions.size(); ++a)
        if (action_matches(procedure.stages[s].actions[a], turn.content))
          table.turn_indices[s][a].push_back(turn.index);
  }
  return table;
}

PfsScore score_pfs(const Transcript& transcript, const ProcedureSpec& procedure,
                   const std::string& judge_role_id, const PfsOptions& options) {
  PfsScore score;
  auto evaluated = options.evaluated_stages.empty()
                       ? procedures::default_evaluated_stages(procedure)
                       : options.evaluated_stages;
  auto table = match_actions(procedure, transcript.turns, judge_role_id);

  std::set<int> turns_with_matches;
  int evaluated_actions = 0, matched_actions = 0;
  int evaluated_stages = 0, complete_stages = 0;

  for (std::size_t s = 0; s < procedure.stages.size(); ++s) {
    const auto& stage = procedure.stages[s];
    bool stage_done = true;
    for (std::size_t a = 0; a < stage.actions.size(); ++a) {
      const auto& matches = table.turn_indices[s][a];
      for (int idx : matches) turns_with_matches.insert(idx);
      if (matches.empty()) stage_done = false;
    }
    score.stage_complete[stage.stage_id] = stage_done ? 1.0 : 0.0;
    if (!evaluated.count(stage.stage_id)) continue;
    ++evaluated_stages;
    if (stage_done) ++complete_stages;
    for (std::size_t a = 0; a < stage.actions.size(); ++a) {
      ++evaluated_actions;
      if (!table.turn_indices[s][a].empty()) ++matched_actions;
    }
  }

  score.sta = evaluated_stages == 0
                  ? 0.0
                  : static_cast<double>(complete_stages) / static_cast<double>(evaluated_stages);
  score.act = evaluated_actions == 0
                  ? 0.0
                  : static_cast<double>(matched_actions) / static_cast<double>(evaluated_actions);
  // Unilateral speech: every match confined to one single turn fails the
  // procedure outright, regardless of coverage.
  if (turns_with_matches.size() == 1) {
    score.uni = 0.0;
    score.value = 0.0;
  } else {
    score.uni = 1.0;
    score.value = (score.sta + score.act) / 2.0;
  }
  return score;
}

// ---------------------------------------------------------------------------
// verdict metrics
// ---------------------------------------------------------------------------

double log_deviation(std::int64_t predicted, std::int64_t actual) {
  return std::fabs(std::log(static_cast<double>(predicted) + 1.0) -
                   std::log(static_cast<double>(actual) + 1.0));
}

namespace {

const CriminalJudgment* usable_criminal_judgment(
    const std::optional<StructuredJudgment>& predicted) {
  if (!predicted || predicted->unparseable) return nullptr;
  return std::get_if<CriminalJudgment>(&predicted->body);
}

}  // namespace

VerScore score_ver(const std::optional<StructuredJudgment>& predicted,
                   const CriminalCaseElements& truth, double ver_cap) {
  VerScore s;
  const auto* judgment = usable_criminal_judgment(predicted);
  if (!judgment) {
    s.v_sentence = ver_cap;
    s.v_fine = ver_cap;
    s.raw = ver_cap;
    s.normalized = 100.0;
    return s;
  }
  s.v_sentence = log_deviation(judgment->sentence_months, truth.verdict_sentence_months);
  s.v_fine = log_deviation(judgment->fine_amount, truth.verdict_fine_amount);
  s.raw = (s.v_sentence + s.v_fine) / 2.0;
  s.normalized = std::min(s.raw / ver_cap, 1.0) * 100.0;
  return s;
}

double score_cri(const std::optional<StructuredJudgment>& predicted,
                 const CriminalCaseElements& truth) {
  const auto* judgment = usable_criminal_judgment(predicted);
  if (!judgment) return 0.0;
  return text::normalize_for_match(judgment->crime) ==
                 text::normalize_for_match(truth.verdict_crime)
             ? 1.0
             : 0.0;
}

LawScore score_law(const std::vector<std::string>& cited_laws,
                   const std::vector<std::string>& truth_laws) {
  LawScore s;
  std::set<std::string> truth;
  for (const auto& l : truth_laws) truth.insert(text::normalize_citation(l));
  truth.erase("");
  if (truth.empty()) {
    s.defined = false;
    return s;
  }
  std::set<std::string> cited;
  for (const auto& l : cited_laws) cited.insert(text::normalize_citation(l));
  std::size_t hits = 0;
  for (const auto& l : truth)
    if (cited.count(l)) ++hits;
  s.value = static_cast<double>(hits) / static_cast<double>(truth.size());
  return s;
}

// ---------------------------------------------------------------------------
// check mechanism & Level-I metrics
// ---------------------------------------------------------------------------

std::optional<std::string> label_round(
    const std::string& round_text,
    const std::vector<std::pair<std::string, std::string>>& topics, JudgeBackend& judge) {
  auto verdict = judge.evaluate(rubrics::topic_label(round_text, topics));
  if (verdict.label.empty() || verdict.label == "none") return std::nullopt;
  return verdict.label;
}

Transcript ensure_topic_tags(const Transcript& transcript, const TopicList& topics,
                             JudgeBackend& judge) {
  for (const auto& t : transcript.turns)
    if (t.topic_tag) return transcript;
  Transcript tagged = transcript;
  if (tagged.turns.empty()) return tagged;
  std::vector<std::pair<std::string, std::string>> topic_pairs;
  for (const auto& t : topics.topics) topic_pairs.emplace_back(t.id, t.question);
  // Answer turns are those not spoken by the initiator (the questioner
  // opens Level-I episodes). A round is the question plus its answer.
  const std::string initiator = tagged.turns.front().speaker;
  for (std::size_t i = 0; i < tagged.turns.size(); ++i) {
    if (tagged.turns[i].speaker == initiator) continue;
    std::string round = i > 0 ? tagged.turns[i - 1].content + "\n" + tagged.turns[i].content
                              : tagged.turns[i].content;
    try {
      if (auto id = label_round(round, topic_pairs, judge)) tagged.turns[i].topic_tag = id;
    } catch (const JudgeError&) {
      // round stays unlabeled; scoring treats the topic as unanswered or
      // unavailable depending on the metric
    }
  }
  return tagged;
}

namespace {

// Last tagged answer turn per topic id.
std::map<std::string, const Turn*> answers_by_topic(const Transcript& transcript) {
  std::map<std::string, const Turn*> out;
  for (const auto& t : transcript.turns)
    if (t.topic_tag) out[*t.topic_tag] = &t;
  return out;
}

}  // namespace

TopicScores score_bin(const Transcript& transcript, const TopicList& topics,
                      JudgeBackend& judge) {
  Transcript tagged = ensure_topic_tags(transcript, topics, judge);
  auto answers = answers_by_topic(tagged);
  TopicScores scores;
  double sum = 0.0;
  for (const auto& topic : topics.topics) {
    if (topic.kind != TopicKind::Binary) continue;
    auto it = answers.find(topic.id);
    if (it == answers.end()) {
      scores.per_topic[topic.id] = 0.0;  // unanswered
      ++scores.scored_count;
      continue;
    }
    std::string label;
    try {
      label = judge.evaluate(rubrics::binary_answer(topic.question, it->second->content)).label;
    } catch (const JudgeError& e) {
      scores.unavailable[topic.id] = e.what();
      continue;
    }
    double value = 0.0;
    if (label == "unanswered") {
      value = 0.0;
    } else if (label == topic.ground_truth) {
      value = 1.0;
    } else if (label == "conditional" || topic.ground_truth == "conditional") {
      // Exactly one side conditional: partially qualified.
      value = 0.5;
    }
    scores.per_topic[topic.id] = value;
    ++scores.scored_count;
  }
  for (const auto& [id, v] : scores.per_topic) sum += v;
  scores.mean = scores.scored_count == 0 ? 0.0 : sum / scores.scored_count;
  return scores;
}

TopicScores score_nbin(const Transcript& transcript, const TopicList& topics,
                       JudgeBackend& judge) {
  Transcript tagged = ensure_topic_tags(transcript, topics, judge);
  auto answers = answers_by_topic(tagged);
  TopicScores scores;
  for (const auto& topic : topics.topics) {
    if (topic.kind != TopicKind::OpenEnded) continue;
    auto it = answers.find(topic.id);
    if (topic.ground_truth_kind == GroundTruthKind::LegalProvision) {
      // 10 iff the canonical provision is cited in any tagged answer.
      bool cited = false;
      for (const auto& t : tagged.turns) {
        if (!t.topic_tag || *t.topic_tag != topic.id) continue;
        if (text::normalize_citation(t.content).find(
                text::normalize_citation(topic.ground_truth)) != std::string::npos) {
          cited = true;
          break;
        }
      }
      scores.per_topic[topic.id] = cited ? 10.0 : 0.0;
      ++scores.scored_count;
      continue;
    }
    // Phrase truths: judge-scored on [0,10] over the final answer.
    if (it == answers.end()) {
      scores.per_topic[topic.id] = 0.0;
      ++scores.scored_count;
      continue;
    }
    try {
      auto verdict = judge.evaluate(rubrics::compare(it->second->content, topic.ground_truth, 0,
                                                     10, "answer quality"));
      scores.per_topic[topic.id] = static_cast<double>(*verdict.score);
      ++scores.scored_count;
    } catch (const JudgeError& e) {
      scores.unavailable[topic.id] = e.what();
    }
  }
  double sum = 0.0;
  for (const auto& [id, v] : scores.per_topic) sum += v;
  scores.mean = scores.scored_count == 0 ? 0.0 : sum / scores.scored_count;
  return scores;
}

// ---------------------------------------------------------------------------
// document scoring
// ---------------------------------------------------------------------------

std::string claims_reference(const CivilCaseElements& t) { return text::join(t.claims, "; "); }

std::string plaintiff_evidence_reference(const CivilCaseElements& t) {
  return text::join(t.plaintiff_evidence, "; ");
}

std::string defendant_evidence_reference(const CivilCaseElements& t) {
  return text::join(t.defendant_evidence, "; ");
}

std::string facts_reference(const CivilCaseElements& t) { return t.case_details; }

std::string defence_reference(const CivilCaseElements& t) { return t.defence_statement; }

std::string respondent_reference(const CivilCaseElements& t) {
  return "Plaintiff " + t.plaintiff.name + ", " + t.plaintiff.address +
         ". Cause of action: " + claims_reference(t);
}

double attribute_match_score(const std::string& block, const PersonAttributes& truth) {
  std::vector<std::string> fields;
  if (truth.entity_kind == EntityKind::Corporation) {
    fields = {truth.name, truth.address,
              truth.representative_name ? *truth.representative_name : ""};
  } else {
    fields = {truth.name, to_code(truth.gender), truth.ethnicity, truth.birthdate, truth.address};
  }
  int total = 0, matched = 0;
  for (const auto& f : fields) {
    if (text::trim(f).empty()) continue;  // absent ground-truth fields don't count
    ++total;
    if (text::contains_normalized(block, f)) ++matched;
  }
  if (total == 0) return 0.0;
  return static_cast<double>(matched) / static_cast<double>(total);
}

namespace {

struct DocComponent {
  std::string key;    // score-card key
  std::string label;  // template label carrying the text
  bool exact = false;
  const PersonAttributes* attrs = nullptr;  // exact components
  std::string reference;                    // judge components
};

std::vector<DocComponent> doc_components(EnvKind env, const CivilCaseElements& truth) {
  std::vector<DocComponent> cs;
  if (env == EnvKind::ComplaintDrafting) {
    cs.push_back({"plaintiff", "Plaintiff", true, &truth.plaintiff, ""});
    cs.push_back({"defendant", "Defendant", true, &truth.defendant, ""});
    cs.push_back({"claims", "Claims", false, nullptr, claims_reference(truth)});
    cs.push_back({"evidence", "Evidence and Sources, Names and Addresses of Witnesses", false,
                  nullptr, plaintiff_evidence_reference(truth)});
    cs.push_back({"facts", "Facts and Legal Grounds", false, nullptr, facts_reference(truth)});
  } else {
    cs.push_back({"defendant", "Defendant", true, &truth.defendant, ""});
    cs.push_back({"respondent", "Parties and Cause of Action", false, nullptr,
                  respondent_reference(truth)});
    cs.push_back({"defence", "Defence Arguments", false, nullptr, defence_reference(truth)});
    cs.push_back({"evidence", "Evidence and Sources, Names and Addresses of Witnesses", false,
                  nullptr, defendant_evidence_reference(truth)});
  }
  return cs;
}

}  // namespace

DocScores score_doc(const std::string& document, EnvKind env, const CivilCaseElements& truth,
                    JudgeBackend& judge) {
  DocScores scores;
  auto blocks = split_components(document, template_for(env));
  double sum = 0.0;
  int counted = 0;
  for (const auto& component : doc_components(env, truth)) {
    auto it = blocks.find(component.label);
    if (it == blocks.end() || text::trim(it->second).empty()) {
      scores.components[component.key] = 0.0;  // missing component
      sum += 0.0;
      ++counted;
      continue;
    }
    if (component.exact) {
      double v = attribute_match_score(it->second, *component.attrs);
      scores.components[component.key] = v;
      sum += v;
      ++counted;
      continue;
    }
    try {
      auto verdict = judge.evaluate(
          rubrics::compare(it->second, component.reference, 0, 10, "component fidelity"));
      double v = static_cast<double>(*verdict.score) / 10.0;
      scores.components[component.key] = v;
      sum += v;
      ++counted;
    } catch (const JudgeError& e) {
      scores.unavailable[component.key] = e.what();
    }
  }
  scores.value = counted == 0 ? 0.0 : sum / counted;
  return scores;
}

int score_jud_civil(const std::string& ruling, const std::string& truth_judgment,
                    JudgeBackend& judge) {
  if (text::trim(ruling).empty()) return 1;
  auto verdict = judge.evaluate(rubrics::compare(ruling, truth_judgment, 1, 10, "the ruling"));
  return *verdict.score;
}

int score_rea(const std::string& reasoning, const std::string& truth_findings,
              JudgeBackend& judge) {
  if (text::trim(reasoning).empty()) return 1;
  auto verdict =
      judge.evaluate(rubrics::compare(reasoning, truth_findings, 1, 10, "the reasoning"));
  return *verdict.score;
}

int score_consistency(const Transcript& transcript, const RoleProfile& profile,
                      JudgeBackend& judge) {
  std::string turns_text;
  for (const auto& t : transcript.turns) {
    if (t.speaker != profile.role_id) continue;
    if (!turns_text.empty()) turns_text += "\n";
    turns_text += t.content;
  }
  if (text::trim(turns_text).empty()) return 1;
  std::string profile_text = to_code(profile.role_kind);
  if (profile.attributes) profile_text += "\n" + to_json(*profile.attributes).dump();
  if (profile.behavioral_style) profile_text += "\n" + *profile.behavioral_style;
  profile_text += "\n" + to_json(profile.payload).dump();
  auto verdict = judge.evaluate(rubrics::consistency(profile_text, turns_text));
  return *verdict.score;
}

// ---------------------------------------------------------------------------
// episode evaluation
// ---------------------------------------------------------------------------

double normalize_metric(const std::string& metric, double value, double ver_cap) {
  if (metric == "NBIN") return value * 10.0;
  if (metric == "JUD" || metric == "REA") return (value - 1.0) / 9.0 * 100.0;
  if (metric == "VER") {
    double cap = ver_cap > 0 ? ver_cap : kDefaultVerCap;
    return std::min(value / cap, 1.0) * 100.0;
  }
  return value * 100.0;  // [0,1] scales: BIN, FOR, DOC, PFS, CRI, LAW
}

namespace {

const std::string* find_judge_role(const EpisodeConfig& config) {
  for (const auto& [id, p] : config.participants)
    if (p.role_kind == RoleKind::Judge) return &id;
  return nullptr;
}

std::optional<StructuredJudgment> judgment_of(const Transcript& t) {
  if (auto* j = std::get_if<StructuredJudgment>(&t.terminal_artifact)) return *j;
  return std::nullopt;
}

std::string document_of(const Transcript& t) {
  if (auto* d = std::get_if<DocumentArtifact>(&t.terminal_artifact)) return d->text;
  return {};
}

void set_metric(ScoreCard& card, const std::string& name, double value, double ver_cap) {
  card.metrics[name] = value;
  card.normalized[name] = normalize_metric(name, value, ver_cap);
}

void eval_level1(ScoreCard& card, const EpisodeConfig& config, const Transcript& transcript,
                 JudgeBackend& judge) {
  const auto& topics = std::get<TopicList>(config.ground_truth);
  Transcript tagged = ensure_topic_tags(transcript, topics, judge);

  auto bin = score_bin(tagged, topics, judge);
  for (const auto& [id, v] : bin.per_topic) card.sub_scores["BIN." + id] = v;
  for (const auto& [id, why] : bin.unavailable) card.unavailable["BIN." + id] = why;
  bool has_binary = std::any_of(topics.topics.begin(), topics.topics.end(),
                                [](const TopicItem& t) { return t.kind == TopicKind::Binary; });
  if (!has_binary) {
    card.unavailable["BIN"] = "no binary topics in this episode";
  } else if (bin.scored_count == 0) {
    card.unavailable["BIN"] = "judge unavailable for every binary topic";
  } else {
    set_metric(card, "BIN", bin.mean, 0);
  }

  auto nbin = score_nbin(tagged, topics, judge);
  for (const auto& [id, v] : nbin.per_topic) card.sub_scores["NBIN." + id] = v;
  for (const auto& [id, why] : nbin.unavailable) card.unavailable["NBIN." + id] = why;
  bool has_open = std::any_of(topics.topics.begin(), topics.topics.end(),
                              [](const TopicItem& t) { return t.kind == TopicKind::OpenEnded; });
  if (!has_open) {
    card.unavailable["NBIN"] = "no open-ended topics in this episode";
  } else if (nbin.scored_count == 0) {
    card.unavailable["NBIN"] = "judge unavailable for every open-ended topic";
  } else {
    set_metric(card, "NBIN", nbin.mean, 0);
  }
}

void eval_level2(ScoreCard& card, const EpisodeConfig& config, const Transcript& transcript,
                 JudgeBackend& judge) {
  const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
  std::string document = document_of(transcript);

  auto f = score_for(document, template_for(config.env_kind));
  set_metric(card, "FOR", f.value, 0);
  card.sub_scores["FOR.seq"] = f.seq;
  card.sub_scores["FOR.label"] = f.label;

  auto d = score_doc(document, config.env_kind, truth, judge);
  for (const auto& [key, v] : d.components) card.sub_scores["DOC." + key] = v;
  for (const auto& [key, why] : d.unavailable) card.unavailable["DOC." + key] = why;
  if (d.components.empty() && !d.unavailable.empty()) {
    card.unavailable["DOC"] = "judge unavailable for every component";
  } else {
    set_metric(card, "DOC", d.value, 0);
  }
}

void eval_court(ScoreCard& card, const EpisodeConfig& config, const Transcript& transcript,
                JudgeBackend& judge, const EvalOptions& options) {
  const ProcedureSpec& procedure =
      options.procedure ? *options.procedure : procedures::default_procedure(config.env_kind);
  const std::string* judge_role = find_judge_role(config);
  std::string judge_role_id = judge_role ? *judge_role : "judge";

  auto pfs = score_pfs(transcript, procedure, judge_role_id, options.pfs);
  set_metric(card, "PFS", pfs.value, 0);
  card.sub_scores["PFS.sta"] = pfs.sta;
  card.sub_scores["PFS.act"] = pfs.act;
  card.sub_scores["PFS.uni"] = pfs.uni;
  for (const auto& [stage, flag] : pfs.stage_complete) card.sub_scores["stage." + stage] = flag;

  auto judgment = judgment_of(transcript);

  if (config.env_kind == EnvKind::CivilCourt) {
    const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
    const CivilJudgment* civ =
        judgment && !judgment->unparseable ? std::get_if<CivilJudgment>(&judgment->body) : nullptr;
    try {
      int jud = civ ? score_jud_civil(civ->ruling_text, truth.court_judgment, judge) : 1;
      set_metric(card, "JUD", jud, 0);
    } catch (const JudgeError& e) {
      card.unavailable["JUD"] = e.what();
    }
    try {
      int rea = civ ? score_rea(civ->reasoning, truth.court_findings, judge) : 1;
      set_metric(card, "REA", rea, 0);
    } catch (const JudgeError& e) {
      card.unavailable["REA"] = e.what();
    }
    auto law = score_law(civ ? civ->cited_laws : std::vector<std::string>{}, truth.applied_laws);
    if (law.defined) {
      set_metric(card, "LAW", law.value, 0);
    } else {
      card.unavailable["LAW"] = "ground truth declares no applied laws";
    }
    return;
  }

  const auto& truth = std::get<CriminalCaseElements>(config.ground_truth);
  double ver_cap = options.ver_cap > 0 ? options.ver_cap : kDefaultVerCap;
  auto ver = score_ver(judgment, truth, ver_cap);
  card.metrics["VER"] = ver.raw;
  card.normalized["VER"] = ver.normalized;
  card.sub_scores["VER.sentence"] = ver.v_sentence;
  card.sub_scores["VER.fine"] = ver.v_fine;
  set_metric(card, "CRI", score_cri(judgment, truth), 0);

  const CriminalJudgment* cr = judgment ? std::get_if<CriminalJudgment>(&judgment->body) : nullptr;
  try {
    int rea = cr ? score_rea(cr->reasoning, truth.court_findings, judge) : 1;
    set_metric(card, "REA", rea, 0);
  } catch (const JudgeError& e) {
    card.unavailable["REA"] = e.what();
  }
  auto law = score_law(cr ? cr->cited_laws : std::vector<std::string>{}, truth.applied_laws);
  if (law.defined) {
    set_metric(card, "LAW", law.value, 0);
  } else {
    card.unavailable["LAW"] = "ground truth declares no applied laws";
  }
}

}  // namespace

ScoreCard evaluate_transcript(const EpisodeConfig& config, const Transcript& transcript,
                              JudgeBackend& judge, const EvalOptions& options) {
  ScoreCard card;
  card.episode_id = transcript.episode_id;
  card.env_kind = transcript.env_kind;

  switch (config.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation:
      eval_level1(card, config, transcript, judge);
      break;
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting:
      eval_level2(card, config, transcript, judge);
      break;
    case EnvKind::CivilCourt:
    case EnvKind::CriminalCourt:
      eval_court(card, config, transcript, judge, options);
      break;
  }

  if (options.include_consistency) {
    for (const auto& [role_id, profile] : config.participants) {
      if (is_agent_under_test(profile.role_kind)) continue;
      try {
        card.sub_scores["consistency." + role_id] =
            static_cast<double>(score_consistency(transcript, profile, judge));
      } catch (const JudgeError& e) {
        card.unavailable["consistency." + role_id] = e.what();
      }
    }
  }
  return card;
}

}  // namespace legalsim::metrics
