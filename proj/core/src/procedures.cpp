#include "legalsim/procedures.hpp"

#include <stdexcept>

#include "legalsim/json_io.hpp"

namespace legalsim::procedures {

namespace {

ProcedureAction action(std::string id, std::string description,
                       std::vector<std::string> patterns) {
  return ProcedureAction{std::move(id), std::move(description), std::move(patterns)};
}

ProcedureSpec build_civil() {
  ProcedureSpec spec;
  spec.env_kind = EnvKind::CivilCourt;
  spec.stages = {
      {"court_preparation",
       "court preparation",
       {
           action("ci_announce_session", "declare the session open and announce the case",
                  {"now in session", "declare the session open", "court is now open"}),
           action("ci_verify_parties", "verify the identities of both parties",
                  {"verify the identities", "confirm your identity", "identity check"}),
           action("ci_announce_rights", "inform the parties of their litigation rights",
                  {"litigation rights", "rights and obligations", "right to apply for recusal"}),
       }},
      {"court_investigation",
       "court investigation",
       {
           action("ci_request_claims", "ask the plaintiff side to state the claims",
                  {"state your claims", "present your claims", "state the claims"}),
           action("ci_request_defence", "ask the defendant side to respond to the claims",
                  {"respond to the claims", "state your defence", "present your defence"}),
           action("ci_request_evidence", "ask the parties to present evidence",
                  {"present your evidence", "submit your evidence", "evidence presentation"}),
           action("ci_cross_examination", "conduct cross-examination of the evidence",
                  {"cross-examination", "cross examine", "examine the evidence"}),
       }},
      {"court_debate",
       "court debate",
       {
           action("ci_open_debate", "open the court debate",
                  {"begin the debate", "court debate", "debate stage"}),
           action("ci_closing_statements", "collect final statements from both sides",
                  {"final statement", "closing statement", "last statement"}),
       }},
      {"court_mitigation",
       "court mitigation",
       {
           action("ci_propose_mediation", "ask whether the parties accept mediation",
                  {"mediation", "willing to mediate", "settle the dispute amicably"}),
       }},
      {"court_decision",
       "court decision",
       {
           action("ci_announce_judgment", "announce the judgment",
                  {"announce the judgment", "pronounce the judgment", "the court rules"}),
       }},
  };
  auto violations = validate_procedure(spec);
  if (!violations.empty()) throw std::logic_error("civil procedure: " + violations.front());
  return spec;
}

ProcedureSpec build_criminal() {
  ProcedureSpec spec;
  spec.env_kind = EnvKind::CriminalCourt;
  spec.stages = {
      {"court_preparation",
       "court preparation",
       {
           action("cr_announce_session", "declare the session open and announce the case",
                  {"now in session", "declare the session open", "court is now open"}),
           action("cr_verify_defendant", "verify the defendant's identity",
                  {"verify your identity", "confirm your identity", "state your name and"}),
           action("cr_announce_rights", "inform the defendant of procedural rights",
                  {"right to defence", "procedural rights", "right to apply for recusal"}),
       }},
      {"court_investigation",
       "court investigation",
       {
           action("cr_read_indictment", "ask the procurator to read the indictment",
                  {"read the indictment", "read out the charges", "present the charges"}),
           action("cr_defendant_statement", "elicit the defendant's statement on the charges",
                  {"your statement", "plead guilty or not", "response to the charges"}),
           action("cr_request_evidence", "ask the procurator to present evidence",
                  {"present your evidence", "submit the evidence", "evidence presentation"}),
           action("cr_cross_examination", "conduct cross-examination of the evidence",
                  {"cross-examination", "cross examine", "examine the evidence"}),
       }},
      {"court_decision",
       "court decision",
       {
           action("cr_announce_verdict", "announce the verdict",
                  {"announce the verdict", "pronounce the judgment", "the court finds"}),
       }},
  };
  auto violations = validate_procedure(spec);
  if (!violations.empty()) throw std::logic_error("criminal procedure: " + violations.front());
  return spec;
}

}  // namespace

const ProcedureSpec& civil_court() {
  static const ProcedureSpec spec = build_civil();
  return spec;
}

const ProcedureSpec& criminal_court() {
  static const ProcedureSpec spec = build_criminal();
  return spec;
}

const ProcedureSpec& default_procedure(EnvKind kind) {
  if (kind == EnvKind::CivilCourt) return civil_court();
  if (kind == EnvKind::CriminalCourt) return criminal_court();
  throw std::invalid_argument("no procedure for env kind " + to_code(kind));
}

std::set<std::string> default_evaluated_stages(const ProcedureSpec& spec) {
  std::set<std::string> out;
  std::size_t count =
      spec.env_kind == EnvKind::CivilCourt ? 4 : (spec.stages.empty() ? 0 : spec.stages.size() - 1);
  for (std::size_t i = 0; i < count && i < spec.stages.size(); ++i)
    out.insert(spec.stages[i].stage_id);
  return out;
}

RoleKind default_addressee_kind(EnvKind kind, const std::string& stage_id) {
  if (kind == EnvKind::CivilCourt) return RoleKind::PlaintiffLawyer;
  // Criminal court: identity checks go to the defendant, the investigation
  // runs through the procurator, the verdict is addressed to the defendant.
  if (stage_id == "court_investigation") return RoleKind::Procurator;
  return RoleKind::Defendant;
}

std::string procedures_json_text() {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  j["CI"] = to_json(civil_court());
  j["CR"] = to_json(criminal_court());
  return dump_canonical(j);
}

}  // namespace legalsim::procedures
