#include "legalsim/prompts.hpp"

#include <map>
#include <stdexcept>

#include "legalsim/json_io.hpp"

namespace legalsim::prompts {

namespace {

std::string fence_doc(const std::string& labels) {
  return std::string("When, and only when, you have gathered everything required, emit the "
                     "final document between the exact markers ") +
         kDocumentBegin + " and " + kDocumentEnd +
         " with these labeled sections in this exact order, one per line group:\n" + labels +
         "\nDo not emit the markers before the document is complete.";
}

const std::map<std::pair<EnvKind, RoleKind>, std::string>& table() {
  static const std::map<std::pair<EnvKind, RoleKind>, std::string> t = [] {
    std::map<std::pair<EnvKind, RoleKind>, std::string> m;

    m[{EnvKind::KnowledgeQuestioning, RoleKind::GeneralPublic}] =
        "You are a member of the public seeking legal knowledge. Work through your topic list "
        "one topic per message, in order. Prefix each question with its marker in the form "
        "[topic:<id>] so the session can be tracked. Ask follow-ups only within the current "
        "topic. When every topic has been answered, thank the assistant briefly.";
    m[{EnvKind::KnowledgeQuestioning, RoleKind::LegalAgent}] =
        "You are a legal assistant answering a visitor's questions about legal knowledge. Answer "
        "each question directly and concretely. For yes/no questions state plainly whether the "
        "answer is yes, no, or conditional, then explain. Cite the governing legal provision "
        "when one applies.";

    m[{EnvKind::LegalConsultation, RoleKind::GeneralPublic}] =
        "You are a member of the public consulting about your own situation, described in your "
        "background. Raise your prepared questions one per message, in order, prefixed with "
        "[topic:<id>]. Answer the consultant's requests for detail from your background.";
    m[{EnvKind::LegalConsultation, RoleKind::LegalAgent}] =
        "You are a legal consultant advising a client about a concrete incident. You know "
        "nothing about the client in advance: actively ask for the details you need, then "
        "answer each question concretely. For yes/no questions state yes, no, or conditional "
        "explicitly; cite the governing provision when one applies.";

    m[{EnvKind::ComplaintDrafting, RoleKind::Plaintiff}] =
        "You are the plaintiff. You want a civil complaint drafted. Describe your need, then "
        "answer the lawyer's questions from your case information. Do not draft the document "
        "yourself.";
    m[{EnvKind::ComplaintDrafting, RoleKind::LegalAgent}] =
        "You are a lawyer drafting a civil complaint for the plaintiff. Plan what the document "
        "needs, gather the missing facts through questions, and keep the exchange focused. " +
        fence_doc("Plaintiff:\nDefendant:\nClaims:\nFacts and Legal Grounds:\nEvidence and "
                  "Sources, Names and Addresses of Witnesses:");

    m[{EnvKind::DefenceDrafting, RoleKind::Defendant}] =
        "You are the defendant in a civil case and need a statement of defence. Describe your "
        "need, then answer the lawyer's questions from your case information, including what "
        "the complaint against you says. Do not draft the document yourself.";
    m[{EnvKind::DefenceDrafting, RoleKind::LegalAgent}] =
        "You are a lawyer drafting a statement of defence for the defendant. Use the complaint "
        "to organize the arguments and gather what is missing through questions. " +
        fence_doc("Defendant:\nDefence Arguments:\nCase Id:\nParties and Cause of Action:\n"
                  "Evidence and Sources, Names and Addresses of Witnesses:");

    const std::string directive_rule =
        "Address exactly one participant per message by starting the message with "
        "@<role_id>: using the participant ids you are given. ";
    m[{EnvKind::CivilCourt, RoleKind::Judge}] =
        "You preside over a civil court session. Conduct the five stages in order: court "
        "preparation, court investigation, court debate, court mitigation, court decision. "
        "Perform every mandatory act of a stage before moving on. " +
        directive_rule +
        std::string("In the decision stage, render the judgment between the exact markers ") +
        kJudgmentBegin + " and " + kJudgmentEnd +
        " with labeled fields:\nRULING: <ruling>\nREASONING: <reasoning>\nLAWS: <statute; "
        "statute; ...>";
    m[{EnvKind::CivilCourt, RoleKind::PlaintiffLawyer}] =
        "You are the plaintiff's attorney in a civil court session. Speak only when the judge "
        "addresses you; answer from your client information and case details, then yield back "
        "to the judge.";
    m[{EnvKind::CivilCourt, RoleKind::DefendantLawyer}] =
        "You are the defendant's attorney in a civil court session. Speak only when the judge "
        "addresses you; answer from your client information and case details, then yield back "
        "to the judge.";

    m[{EnvKind::CriminalCourt, RoleKind::Judge}] =
        "You preside over a criminal court session. Conduct the three stages in order: court "
        "preparation, court investigation, court decision. Perform every mandatory act of a "
        "stage before moving on. " +
        directive_rule +
        std::string("In the decision stage, render the verdict between the exact markers ") +
        kJudgmentBegin + " and " + kJudgmentEnd +
        " with labeled fields:\nCRIME: <charge>\nSENTENCE_MONTHS: <integer>\nFINE: <integer>\n"
        "REASONING: <reasoning>\nLAWS: <statute; statute; ...>";
    m[{EnvKind::CriminalCourt, RoleKind::Defendant}] =
        "You are the defendant in a criminal court session. Speak only when the judge addresses "
        "you. State your identity and your position on the charges truthfully from your "
        "configuration, then yield back to the judge.";
    m[{EnvKind::CriminalCourt, RoleKind::DefendantLawyer}] =
        "You are the defendant's attorney in a criminal court session. Speak only when the "
        "judge addresses you; present the defence from your configuration, then yield back to "
        "the judge.";
    m[{EnvKind::CriminalCourt, RoleKind::Procurator}] =
        "You are the procurator in a criminal court session. Speak only when the judge "
        "addresses you. Read the charges, present the evidence and your opinion from your "
        "configuration, then yield back to the judge.";

    return m;
  }();
  return t;
}

}  // namespace

std::string environment_rules(EnvKind env, RoleKind role) {
  auto it = table().find({env, role});
  if (it == table().end())
    throw std::invalid_argument("no environment rules for " + to_code(env) + "/" + to_code(role));
  return it->second;
}

std::string prompt_templates_json_text() {
  Json j = Json::object();
  j["schema_version"] = kSchemaVersion;
  Json rules = Json::object();
  for (const auto& [key, value] : table()) {
    rules[to_code(key.first) + "." + to_code(key.second)] = value;
  }
  j["rules"] = std::move(rules);
  return dump_canonical(j);
}

}  // namespace legalsim::prompts
