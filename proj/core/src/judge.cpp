#include "legalsim/judge.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "legalsim/text.hpp"

namespace legalsim {

namespace {

bool is_section_header(const std::string& line) {
  // Headers look like "NAME:" with an all-caps name (underscores allowed).
  auto pos = line.find(':');
  if (pos == std::string::npos || pos == 0) return false;
  for (std::size_t i = 0; i < pos; ++i) {
    unsigned char c = static_cast<unsigned char>(line[i]);
    if (!(std::isupper(c) || c == '_' || std::isdigit(c))) return false;
  }
  return true;
}

}  // namespace

std::string payload_section(const std::string& payload, const std::string& name) {
  const std::string header = name + ":";
  auto lines = text::split(payload, '\n');
  std::string out;
  bool in_section = false;
  for (const auto& line : lines) {
    if (in_section) {
      if (is_section_header(line)) break;
      if (!out.empty()) out += "\n";
      out += line;
    } else if (text::starts_with(line, header)) {
      in_section = true;
      std::string rest = text::trim(line.substr(header.size()));
      if (!rest.empty()) out = rest;
    }
  }
  return text::trim(out);
}

std::optional<JudgeVerdict> parse_judge_reply(const std::string& reply,
                                              const JudgeSchema& schema) {
  const std::string trimmed = text::trim(reply);
  if (schema.range) {
    // First integer anywhere in the reply; judges often answer "Score: 7".
    std::optional<long> value;
    for (std::size_t i = 0; i < trimmed.size(); ++i) {
      if (std::isdigit(static_cast<unsigned char>(trimmed[i])) ||
          (trimmed[i] == '-' && i + 1 < trimmed.size() &&
           std::isdigit(static_cast<unsigned char>(trimmed[i + 1])))) {
        value = std::strtol(trimmed.c_str() + i, nullptr, 10);
        break;
      }
    }
    if (!value) return std::nullopt;
    if (*value < schema.range->first || *value > schema.range->second) return std::nullopt;
    return JudgeVerdict{static_cast<int>(*value), {}};
  }
  if (schema.labels.empty()) {
    // Free-text schema: any non-empty reply passes through as the label.
    if (trimmed.empty()) return std::nullopt;
    return JudgeVerdict{std::nullopt, trimmed};
  }
  // Label schema: exact match first, then earliest occurrence in the reply.
  const std::string lowered = text::lower(trimmed);
  for (const auto& label : schema.labels)
    if (lowered == text::lower(label)) return JudgeVerdict{std::nullopt, label};
  std::size_t best_pos = std::string::npos;
  const std::string* best = nullptr;
  for (const auto& label : schema.labels) {
    auto pos = lowered.find(text::lower(label));
    if (pos != std::string::npos && (pos < best_pos || (pos == best_pos && best && label.size() > best->size()))) {
      best_pos = pos;
      best = &label;
    }
  }
  if (best) return JudgeVerdict{std::nullopt, *best};
  return std::nullopt;
}

JudgeVerdict LlmJudge::evaluate(const JudgeRequest& request) {
  std::vector<ChatMessage> messages{{ChatRole::System, request.rubric_prompt},
                                    {ChatRole::User, request.payload}};
  std::string reply;
  try {
    reply = backend_->chat(messages);
  } catch (const BackendError& e) {
    throw JudgeError(std::string("judge backend failed: ") + e.what());
  }
  if (auto verdict = parse_judge_reply(reply, request.schema)) return *verdict;

  // One reprompt with a format reminder, then give up.
  std::string reminder;
  if (request.schema.range) {
    reminder = "Answer with a single integer between " +
               std::to_string(request.schema.range->first) + " and " +
               std::to_string(request.schema.range->second) + ", nothing else.";
  } else {
    reminder = "Answer with exactly one of: " + text::join(request.schema.labels, ", ") + ".";
  }
  messages.push_back({ChatRole::Assistant, reply});
  messages.push_back({ChatRole::User, reminder});
  try {
    reply = backend_->chat(messages);
  } catch (const BackendError& e) {
    throw JudgeError(std::string("judge backend failed on reprompt: ") + e.what());
  }
  if (auto verdict = parse_judge_reply(reply, request.schema)) return *verdict;
  throw JudgeError("judge produced unparseable output twice for task " + request.task_id);
}

// ---------------------------------------------------------------------------
// HeuristicJudge
// ---------------------------------------------------------------------------

namespace {

// Overlap-based score: fraction of reference tokens present in candidate,
// mapped onto [lo, hi]. Equal normalized text pins the ceiling.
int overlap_score(const std::string& candidate, const std::string& reference, int lo, int hi) {
  if (text::trim(candidate).empty()) return lo;
  if (text::normalize_for_match(candidate) == text::normalize_for_match(reference)) return hi;
  auto cand_tokens = text::match_tokens(candidate);
  auto ref_tokens = text::match_tokens(reference);
  if (ref_tokens.empty()) return lo;
  std::set<std::string> cand_set(cand_tokens.begin(), cand_tokens.end());
  std::size_t hit = 0;
  std::set<std::string> seen;
  for (const auto& t : ref_tokens)
    if (seen.insert(t).second && cand_set.count(t)) ++hit;
  double ratio = static_cast<double>(hit) / static_cast<double>(seen.size());
  int span = hi - lo;
  int score = lo + static_cast<int>(std::lround(ratio * span));
  // Verbatim-inclusion shortcut is already covered by equality; partial
  // overlap never reaches the ceiling.
  if (score >= hi) score = hi - (ratio < 1.0 ? 1 : 0);
  return std::clamp(score, lo, hi);
}

std::string classify_binary(const std::string& answer) {
  if (text::trim(answer).empty()) return "unanswered";
  const std::string norm = " " + text::normalize_for_match(answer) + " ";
  if (norm.find(" conditional ") != std::string::npos ||
      norm.find(" it depends ") != std::string::npos ||
      norm.find(" depends on ") != std::string::npos)
    return "conditional";
  auto yes_pos = norm.find(" yes ");
  auto no_pos = norm.find(" no ");
  if (yes_pos == std::string::npos && no_pos == std::string::npos) return "unanswered";
  if (no_pos == std::string::npos || (yes_pos != std::string::npos && yes_pos < no_pos))
    return "yes";
  return "no";
}

}  // namespace

JudgeVerdict HeuristicJudge::evaluate(const JudgeRequest& request) {
  if (request.task_id == "binary_answer") {
    return {std::nullopt, classify_binary(payload_section(request.payload, "ANSWER"))};
  }
  if (request.task_id == "topic_label") {
    const std::string round = payload_section(request.payload, "ROUND");
    const std::string topics = payload_section(request.payload, "TOPICS");
    // Explicit [topic:<id>] marker wins; otherwise match the question text.
    for (const auto& label : request.schema.labels) {
      if (label == "none") continue;
      if (round.find("[topic:" + label + "]") != std::string::npos)
        return {std::nullopt, label};
    }
    for (const auto& line : text::split(topics, '\n')) {
      auto bar = line.find('|');
      if (bar == std::string::npos) continue;
      std::string id = text::trim(line.substr(0, bar));
      std::string question = text::trim(line.substr(bar + 1));
      if (!question.empty() && text::contains_normalized(round, question))
        return {std::nullopt, id};
    }
    return {std::nullopt, "none"};
  }
  if (request.task_id == "addressee") {
    const std::string txt = payload_section(request.payload, "TEXT");
    std::size_t best_pos = std::string::npos;
    std::string best = "none";
    for (const auto& label : request.schema.labels) {
      if (label == "none") continue;
      auto pos = txt.find(label);
      if (pos != std::string::npos && pos < best_pos) {
        best_pos = pos;
        best = label;
      }
    }
    return {std::nullopt, best};
  }
  if (request.task_id == "consistency") {
    int lo = request.schema.range ? request.schema.range->first : 1;
    int hi = request.schema.range ? request.schema.range->second : 10;
    const std::string profile = payload_section(request.payload, "PROFILE");
    const std::string turns = payload_section(request.payload, "TURNS");
    if (text::trim(turns).empty()) return {lo, {}};
    return {overlap_score(turns, profile, lo, hi), {}};
  }
  // Default: comparative scoring ("compare" and any future range rubric).
  if (request.schema.range) {
    const std::string candidate = payload_section(request.payload, "CANDIDATE");
    const std::string reference = payload_section(request.payload, "REFERENCE");
    return {overlap_score(candidate, reference, request.schema.range->first,
                          request.schema.range->second),
            {}};
  }
  return {std::nullopt, request.schema.labels.empty() ? std::string{} : request.schema.labels.front()};
}

// ---------------------------------------------------------------------------
// rubric builders
// ---------------------------------------------------------------------------

namespace rubrics {

JudgeRequest binary_answer(const std::string& question, const std::string& answer) {
  JudgeRequest r;
  r.task_id = "binary_answer";
  r.rubric_prompt =
      "You summarize a legal answer. Decide whether the answer to the question is 'yes', 'no', "
      "'conditional' (it depends on circumstances), or 'unanswered'. Reply with exactly one of "
      "those words.";
  r.payload = "QUESTION:\n" + question + "\nANSWER:\n" + answer;
  r.schema = JudgeSchema::label_set({"yes", "no", "conditional", "unanswered"});
  return r;
}

JudgeRequest topic_label(const std::string& round_text,
                         const std::vector<std::pair<std::string, std::string>>& topics) {
  JudgeRequest r;
  r.task_id = "topic_label";
  r.rubric_prompt =
      "You label a dialogue round with the topic it addresses. Reply with the topic id, or "
      "'none' if no listed topic is addressed.";
  std::string topic_lines;
  std::vector<std::string> labels;
  for (const auto& [id, question] : topics) {
    topic_lines += id + " | " + question + "\n";
    labels.push_back(id);
  }
  labels.push_back("none");
  r.payload = "TOPICS:\n" + topic_lines + "ROUND:\n" + round_text;
  r.schema = JudgeSchema::label_set(std::move(labels));
  return r;
}

JudgeRequest compare(const std::string& candidate, const std::string& reference, int lo, int hi,
                     const std::string& aspect) {
  JudgeRequest r;
  r.task_id = "compare";
  r.rubric_prompt = "You grade a candidate text against a reference for " + aspect +
                    " in terms of legal points, logic, and factual accuracy. Reply with a single "
                    "integer from " +
                    std::to_string(lo) + " (worst) to " + std::to_string(hi) + " (best).";
  r.payload = "REFERENCE:\n" + reference + "\nCANDIDATE:\n" + candidate;
  r.schema = JudgeSchema::int_range(lo, hi);
  return r;
}

JudgeRequest consistency(const std::string& profile_text, const std::string& turns_text) {
  JudgeRequest r;
  r.task_id = "consistency";
  r.rubric_prompt =
      "You rate how consistently a role-played participant's statements match its configured "
      "profile and behavioral style. Reply with a single integer from 1 (inconsistent) to 10 "
      "(fully consistent).";
  r.payload = "PROFILE:\n" + profile_text + "\nTURNS:\n" + turns_text;
  r.schema = JudgeSchema::int_range(1, 10);
  return r;
}

JudgeRequest addressee(const std::string& turn_text, const std::vector<std::string>& role_ids) {
  JudgeRequest r;
  r.task_id = "addressee";
  r.rubric_prompt =
      "You decide which participant a courtroom utterance is addressed to. Reply with exactly "
      "one of the listed role ids, or 'none'.";
  std::vector<std::string> labels = role_ids;
  labels.push_back("none");
  r.payload = "ROLES:\n" + text::join(role_ids, ", ") + "\nTEXT:\n" + turn_text;
  r.schema = JudgeSchema::label_set(std::move(labels));
  return r;
}

}  // namespace rubrics

}  // namespace legalsim
