#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "legalsim/backend.hpp"
#include "legalsim/domain.hpp"

namespace legalsim {

// The rubric declares what shape of answer is acceptable: an integer
// range or a closed label set.
struct JudgeSchema {
  std::optional<std::pair<int, int>> range;
  std::vector<std::string> labels;

  static JudgeSchema int_range(int lo, int hi) { return {std::pair{lo, hi}, {}}; }
  static JudgeSchema label_set(std::vector<std::string> labels) {
    return {std::nullopt, std::move(labels)};
  }
};

struct JudgeRequest {
  std::string task_id;        // machine-readable rubric id ("compare", "binary_answer", ...)
  std::string rubric_prompt;  // instruction text for model-backed judges
  std::string payload;        // labeled sections (QUESTION:/ANSWER:/CANDIDATE:/REFERENCE:/...)
  JudgeSchema schema;
};

struct JudgeVerdict {
  std::optional<int> score;  // set for range schemas
  std::string label;         // set for label schemas
};

// Raised when the judge cannot produce a usable verdict; callers mark the
// affected metric unavailable rather than scoring it zero.
class JudgeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual JudgeVerdict evaluate(const JudgeRequest& request) = 0;
};

// Model-backed judge: sends rubric + payload to a chat backend and parses
// the structured answer. Out-of-range or unparseable output triggers one
// reprompt with a format reminder, then JudgeError.
class LlmJudge : public JudgeBackend {
 public:
  explicit LlmJudge(ChatBackendPtr backend) : backend_(std::move(backend)) {}
  JudgeVerdict evaluate(const JudgeRequest& request) override;

 private:
  ChatBackendPtr backend_;
};

// Deterministic rule-based judge for desk-scale runs and tests. Parses the
// labeled payload sections and scores by exact/overlap matching; never
// throws.
class HeuristicJudge : public JudgeBackend {
 public:
  JudgeVerdict evaluate(const JudgeRequest& request) override;
};

// Parses a raw judge reply against a schema. Exposed for LlmJudge tests.
std::optional<JudgeVerdict> parse_judge_reply(const std::string& reply, const JudgeSchema& schema);

// Extracts a payload section introduced by "NAME:" up to the next section
// header or end of text.
std::string payload_section(const std::string& payload, const std::string& name);

// --- rubric builders used across the harness ---

namespace rubrics {

// Summarize the agent's answer to a binary legal question.
JudgeRequest binary_answer(const std::string& question, const std::string& answer);

// Label a dialogue round with the topic it addresses; labels are the topic
// ids plus "none".
JudgeRequest topic_label(const std::string& round_text,
                         const std::vector<std::pair<std::string, std::string>>& topics);

// Score candidate text against a reference on the given integer scale.
JudgeRequest compare(const std::string& candidate, const std::string& reference, int lo, int hi,
                     const std::string& aspect);

// Rate profile-vs-behavior alignment on [1,10].
JudgeRequest consistency(const std::string& profile_text, const std::string& turns_text);

// Classify which participant a court utterance addresses.
JudgeRequest addressee(const std::string& turn_text, const std::vector<std::string>& role_ids);

}  // namespace rubrics

}  // namespace legalsim
