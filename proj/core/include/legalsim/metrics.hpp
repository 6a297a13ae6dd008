#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "legalsim/domain.hpp"
#include "legalsim/judge.hpp"

namespace legalsim::metrics {

// ---------------------------------------------------------------------------
// Document format templates
// ---------------------------------------------------------------------------

enum class DocKind { Complaint, Defence };

struct FormatTemplate {
  DocKind doc_kind = DocKind::Complaint;
  std::vector<std::string> labels;  // required order
  std::map<std::string, std::vector<std::string>> label_patterns;
};

const FormatTemplate& complaint_template();
const FormatTemplate& defence_template();
const FormatTemplate& template_for(EnvKind env);  // CD or DD

// Template labels in the order they appear in the document (first
// occurrence each; labels not recognized are absent).
std::vector<std::string> recognize_labels(const std::string& document,
                                          const FormatTemplate& tmpl);

// Splits the document into label -> section text (text after the label
// line up to the next recognized label). Labels not present are absent.
std::map<std::string, std::string> split_components(const std::string& document,
                                                    const FormatTemplate& tmpl);

// ---------------------------------------------------------------------------
// Rule-based metrics (pure, deterministic)
// ---------------------------------------------------------------------------

struct ForScore {
  double seq = 0.0;    // 1 when present labels respect the template order
  double label = 0.0;  // recognized distinct labels / template labels
  double value = 0.0;  // seq * label
};

// Format-following score. Empty documents score 0.
ForScore score_for(const std::string& document, const FormatTemplate& tmpl);

// True when any of the action's patterns occurs in the content (matching
// is case-/punctuation-insensitive).
bool action_matches(const ProcedureAction& action, const std::string& content);

// turn_indices[stage][action] = indices of judge turns matching the action
struct ActionMatchTable {
  std::vector<std::vector<std::vector<int>>> turn_indices;
};

ActionMatchTable match_actions(const ProcedureSpec& procedure, const std::vector<Turn>& turns,
                               const std::string& judge_role_id);

struct PfsOptions {
  // Stage ids counted in the STA/ACT denominators; empty means the
  // procedure's default evaluated set.
  std::set<std::string> evaluated_stages;
};

struct PfsScore {
  double sta = 0.0;
  double act = 0.0;
  double uni = 1.0;  // 0 when every match sits in a single turn
  double value = 0.0;
  std::map<std::string, double> stage_complete;  // all stages, 0/1 flags
};

// Procedural-following score over judge-role turns: (STA + ACT) / 2, where
// matches confined to one turn are a procedural failure scoring 0.
PfsScore score_pfs(const Transcript& transcript, const ProcedureSpec& procedure,
                   const std::string& judge_role_id, const PfsOptions& options = {});

// |ln(p+1) - ln(a+1)|
double log_deviation(std::int64_t predicted, std::int64_t actual);

// Saturation cap for mapping raw verdict deviation onto [0,100]: a 100x
// magnitude error saturates. ln(101).
extern const double kDefaultVerCap;

struct VerScore {
  double v_sentence = 0.0;
  double v_fine = 0.0;
  double raw = 0.0;         // (v_sentence + v_fine) / 2
  double normalized = 0.0;  // min(raw / cap, 1) * 100; lower is better
};

// Verdict deviation. A missing, unparseable, or wrong-court judgment
// scores the maximum (cap raw, 100 normalized).
VerScore score_ver(const std::optional<StructuredJudgment>& predicted,
                   const CriminalCaseElements& truth, double ver_cap = kDefaultVerCap);

// 1 when the normalized charge labels match exactly; missing judgment -> 0.
double score_cri(const std::optional<StructuredJudgment>& predicted,
                 const CriminalCaseElements& truth);

struct LawScore {
  double value = 0.0;
  bool defined = true;  // false when the truth set is empty (metric skipped)
};

// |cited ∩ truth| / |truth| after citation normalization.
LawScore score_law(const std::vector<std::string>& cited_laws,
                   const std::vector<std::string>& truth_laws);

// ---------------------------------------------------------------------------
// Judge-backed metrics
// ---------------------------------------------------------------------------

// The check mechanism: label one dialogue round with the topic it
// addresses. Returns nullopt for "none". Throws JudgeError.
std::optional<std::string> label_round(
    const std::string& round_text,
    const std::vector<std::pair<std::string, std::string>>& topics, JudgeBackend& judge);

// Copy of the transcript with answer-turn topic tags populated via the
// check mechanism (no-op when any tag is already present).
Transcript ensure_topic_tags(const Transcript& transcript, const TopicList& topics,
                             JudgeBackend& judge);

struct TopicScores {
  std::map<std::string, double> per_topic;
  double mean = 0.0;        // over scored topics
  int scored_count = 0;     // topics that produced a value
  std::map<std::string, std::string> unavailable;  // topic id -> reason
};

// Binary accuracy: 1 exact match, 0 wrong, 0.5 when exactly one side is
// conditional, 0 unanswered. Judge failures exclude the topic.
TopicScores score_bin(const Transcript& transcript, const TopicList& topics, JudgeBackend& judge);

// Non-binary score in [0,10]: provision truths by citation matching
// (10 or 0), phrase truths by judge rubric.
TopicScores score_nbin(const Transcript& transcript, const TopicList& topics, JudgeBackend& judge);

struct DocScores {
  std::map<std::string, double> components;  // component label -> [0,1]
  double value = 0.0;                        // mean over scored components
  std::map<std::string, std::string> unavailable;
};

// Document score: personal-information components by per-field exact match,
// the rest judge-scored on [0,10] and normalized. Missing components score 0.
DocScores score_doc(const std::string& document, EnvKind env, const CivilCaseElements& truth,
                    JudgeBackend& judge);

// References the document components are compared against.
std::string claims_reference(const CivilCaseElements& truth);
std::string plaintiff_evidence_reference(const CivilCaseElements& truth);
std::string defendant_evidence_reference(const CivilCaseElements& truth);
std::string facts_reference(const CivilCaseElements& truth);
std::string defence_reference(const CivilCaseElements& truth);
std::string respondent_reference(const CivilCaseElements& truth);

// Fraction of the ground-truth identity fields present in the block.
double attribute_match_score(const std::string& block, const PersonAttributes& truth);

// Judgment quality for the civil court, [1,10]; absent ruling -> 1.
int score_jud_civil(const std::string& ruling, const std::string& truth_judgment,
                    JudgeBackend& judge);

// Reasoning quality against the court findings, [1,10]; absent -> 1.
int score_rea(const std::string& reasoning, const std::string& truth_findings,
              JudgeBackend& judge);

// Profile-vs-behavior alignment for an environment-driven role, [1,10].
// A role with no turns scores the floor without consulting the judge.
int score_consistency(const Transcript& transcript, const RoleProfile& profile,
                      JudgeBackend& judge);

// ---------------------------------------------------------------------------
// Episode evaluation
// ---------------------------------------------------------------------------

struct EvalOptions {
  double ver_cap = 0.0;  // 0 -> kDefaultVerCap
  PfsOptions pfs;
  std::optional<ProcedureSpec> procedure;  // override the built-in checklist
  bool include_consistency = true;
};

// [0,100] normalization: x100 for [0,1] scales, x10 for [0,10], linear
// floor-to-0 for [1,10]; VER via the capped map.
double normalize_metric(const std::string& metric, double value, double ver_cap = 0.0);

// Runs every metric defined for the episode's environment and assembles
// the score card. Judge failures mark metrics unavailable, never zero.
ScoreCard evaluate_transcript(const EpisodeConfig& config, const Transcript& transcript,
                              JudgeBackend& judge, const EvalOptions& options = {});

}  // namespace legalsim::metrics
