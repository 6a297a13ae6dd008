#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "legalsim/domain.hpp"

namespace legalsim {

using Json = nlohmann::ordered_json;

// Raised on schema violations; message carries the JSON path of the
// offending value, e.g. "$.participants.p1.traits.extraversion".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Read cursor that tracks its location for error messages.
class JsonReader {
 public:
  explicit JsonReader(const Json& j, std::string path = "$") : j_(&j), path_(std::move(path)) {}

  const Json& raw() const { return *j_; }
  const std::string& path() const { return path_; }

  bool has(const std::string& key) const;
  JsonReader at(const std::string& key) const;
  JsonReader at(std::size_t index) const;
  std::size_t array_size() const;

  std::string get_string() const;
  std::int64_t get_int() const;
  std::uint64_t get_uint() const;
  double get_double() const;
  bool get_bool() const;

  std::string string_field(const std::string& key) const;
  std::string string_field_or(const std::string& key, const std::string& fallback) const;
  std::optional<std::string> opt_string_field(const std::string& key) const;
  std::int64_t int_field(const std::string& key) const;
  std::int64_t int_field_or(const std::string& key, std::int64_t fallback) const;
  std::vector<std::string> string_array_field(const std::string& key) const;
  std::vector<std::string> string_array_field_or(const std::string& key) const;

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_, what); }

 private:
  const Json* j_;
  std::string path_;
};

// --- serialization (canonical schema, schema_version on document roots) ---

Json to_json(const PersonalityTraits& t);
Json to_json(const PersonAttributes& a);
Json to_json(const TopicItem& t);
Json to_json(const TopicList& l);
Json to_json(const TopicPromptList& l);
Json to_json(const CivilCaseElements& e);
Json to_json(const CriminalDefendant& d);
Json to_json(const CriminalCaseElements& e);
Json to_json(const CivilPartyPayload& p);
Json to_json(const CriminalPartyPayload& p);
Json to_json(const RolePayload& p);
Json to_json(const RoleProfile& p);
Json to_json(const GroundTruth& g);
Json to_json(const EpisodeConfig& c);
Json to_json(const Turn& t);
Json to_json(const StructuredJudgment& j);
Json to_json(const TerminalArtifact& a);
Json to_json(const Transcript& t);
Json to_json(const ProcedureAction& a);
Json to_json(const ProcedureStage& s);
Json to_json(const ProcedureSpec& s);
Json to_json(const ScoreCard& c);

PersonalityTraits traits_from_json(const JsonReader& r);
PersonAttributes attributes_from_json(const JsonReader& r);
TopicItem topic_item_from_json(const JsonReader& r);
TopicList topic_list_from_json(const JsonReader& r);
TopicPromptList topic_prompt_list_from_json(const JsonReader& r);
CivilCaseElements civil_elements_from_json(const JsonReader& r);
CriminalDefendant criminal_defendant_from_json(const JsonReader& r);
CriminalCaseElements criminal_elements_from_json(const JsonReader& r);
CivilPartyPayload civil_payload_from_json(const JsonReader& r);
CriminalPartyPayload criminal_payload_from_json(const JsonReader& r);
RolePayload payload_from_json(const JsonReader& r);
RoleProfile profile_from_json(const JsonReader& r);
GroundTruth ground_truth_from_json(const JsonReader& r);
EpisodeConfig episode_config_from_json(const JsonReader& r);
Turn turn_from_json(const JsonReader& r);
StructuredJudgment judgment_from_json(const JsonReader& r);
TerminalArtifact artifact_from_json(const JsonReader& r);
Transcript transcript_from_json(const JsonReader& r);
ProcedureSpec procedure_from_json(const JsonReader& r);
ScoreCard score_card_from_json(const JsonReader& r);

// --- string / file helpers ---

// Canonical text form: 2-space indent plus trailing newline. Used for every
// persisted artifact so reruns are byte-comparable.
std::string dump_canonical(const Json& j);

Json parse_json(const std::string& text);  // wraps nlohmann errors in ParseError

EpisodeConfig parse_episode_config(const std::string& text);
Transcript parse_transcript(const std::string& text);
ScoreCard parse_score_card(const std::string& text);
ProcedureSpec parse_procedure(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace legalsim
