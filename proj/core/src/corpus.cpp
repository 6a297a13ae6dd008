#include "legalsim/corpus.hpp"

#include <algorithm>
#include <filesystem>

#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/personality.hpp"
#include "legalsim/prompts.hpp"
#include "legalsim/rng.hpp"
#include "legalsim/text.hpp"

namespace legalsim::corpus {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// element records on disk
// ---------------------------------------------------------------------------

namespace {

SourceRecord record_from_json(const JsonReader& r) {
  auto kind = r.string_field("kind");
  if (kind == "topic_list") return topic_list_from_json(r.at("value"));
  if (kind == "civil_case") return civil_elements_from_json(r.at("value"));
  if (kind == "criminal_case") return criminal_elements_from_json(r.at("value"));
  r.at("kind").fail("unknown record kind '" + kind + "'");
}

Json record_to_json(const SourceRecord& record) {
  Json j{{"schema_version", kSchemaVersion}};
  if (auto* t = std::get_if<TopicList>(&record)) {
    j["kind"] = "topic_list";
    j["value"] = to_json(*t);
  } else if (auto* c = std::get_if<CivilCaseElements>(&record)) {
    j["kind"] = "civil_case";
    j["value"] = to_json(*c);
  } else {
    j["kind"] = "criminal_case";
    j["value"] = to_json(std::get<CriminalCaseElements>(record));
  }
  return j;
}

}  // namespace

std::string record_json_text(const SourceRecord& record) {
  return dump_canonical(record_to_json(record));
}

LoadReport load_elements(const std::string& dir) {
  LoadReport report;
  if (!fs::exists(dir)) return report;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    try {
      auto j = parse_json(read_text_file(file.string()));
      report.records.push_back(record_from_json(JsonReader(j)));
    } catch (const std::exception& e) {
      report.rejects[file.filename().string()] = e.what();
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// extraction
// ---------------------------------------------------------------------------

namespace {

std::string extraction_schema(RawDocKind kind) {
  switch (kind) {
    case RawDocKind::CivilJudgmentDocument:
      return R"schema({"kind":"civil_case","value":{"plaintiff":{"name":"","gender":"female|male|unspecified","ethnicity":"","birthdate":"YYYY-MM-DD","address":"","entity_kind":"individual|corporation","representative_name":"corporations only"},"defendant":{"...":"same shape as plaintiff"},"claims":[""],"case_details":"","defence_statement":"","plaintiff_evidence":[""],"defendant_evidence":[""],"court_judgment":"","court_findings":"","applied_laws":[""]}})schema";
    case RawDocKind::CriminalJudgmentDocument:
      return R"schema({"kind":"criminal_case","value":{"defendant":{"attributes":{"name":"","gender":"female|male|unspecified","ethnicity":"","birthdate":"YYYY-MM-DD","address":"","entity_kind":"individual"},"occupation":"","education":"","custody_status":""},"plea_statement":"","lawyer_defence":"","charges":[""],"procurator_opinion":"","verdict_crime":"","verdict_sentence_months":0,"verdict_fine_amount":0,"court_findings":"","applied_laws":[""]}})schema";
    case RawDocKind::LegalArticle:
      return R"schema({"kind":"topic_list","value":{"theme":"","background":"","occupation":"","topics":[{"id":"t1","kind":"binary|open_ended","question":"","ground_truth":"yes|no|conditional or the provision/phrase","ground_truth_kind":"yes_no|legal_provision|legal_phrase"}]}})schema";
  }
  return {};
}

std::optional<SourceRecord> try_parse_record(const std::string& reply, std::string& error) {
  // Models often wrap JSON in prose or fences; take the outermost braces.
  auto begin = reply.find('{');
  auto end = reply.rfind('}');
  if (begin == std::string::npos || end == std::string::npos || end <= begin) {
    error = "no JSON object in reply";
    return std::nullopt;
  }
  try {
    auto j = parse_json(reply.substr(begin, end - begin + 1));
    return record_from_json(JsonReader(j));
  } catch (const std::exception& e) {
    error = e.what();
    return std::nullopt;
  }
}

}  // namespace

ExtractionResult extract_elements(const std::string& raw_document, RawDocKind kind,
                                  ChatBackend& backend) {
  ExtractionResult result;
  const std::string system =
      "You extract structured legal elements from a source document. Reply with exactly one "
      "JSON object matching this schema, no commentary:\n" +
      extraction_schema(kind);
  std::vector<ChatMessage> messages{{ChatRole::System, system},
                                    {ChatRole::User, raw_document}};
  std::string error;
  try {
    std::string reply = backend.chat(messages);
    if (auto record = try_parse_record(reply, error)) {
      result.record = std::move(record);
      return result;
    }
    messages.push_back({ChatRole::Assistant, reply});
    messages.push_back(
        {ChatRole::User, "That was not valid (" + error +
                             "). Reply with only the JSON object, exactly matching the schema."});
    reply = backend.chat(messages);
    if (auto record = try_parse_record(reply, error)) {
      result.record = std::move(record);
      return result;
    }
    result.error = "extraction rejected after reprompt: " + error;
  } catch (const BackendError& e) {
    result.error = std::string("extraction backend failed: ") + e.what();
  }
  return result;
}

// ---------------------------------------------------------------------------
// episode building
// ---------------------------------------------------------------------------

namespace {

TopicPromptList prompt_view(const TopicList& topics) {
  TopicPromptList view;
  view.theme = topics.theme;
  view.background = topics.background;
  for (const auto& t : topics.topics) view.topics.push_back({t.id, t.kind, t.question});
  return view;
}

std::string personality_context(const SourceRecord& elements, EnvKind env) {
  switch (env) {
    case EnvKind::KnowledgeQuestioning: {
      const auto& t = std::get<TopicList>(elements);
      return t.occupation.value_or(t.theme);
    }
    case EnvKind::LegalConsultation: {
      const auto& t = std::get<TopicList>(elements);
      return t.background.value_or(t.theme);
    }
    case EnvKind::ComplaintDrafting:
      return std::get<CivilCaseElements>(elements).case_details;
    case EnvKind::DefenceDrafting:
      return std::get<CivilCaseElements>(elements).defence_statement;
    default:
      return {};
  }
}

void give_personality(RoleProfile& profile, const std::string& context, std::uint64_t seed,
                      JudgeBackend* style_backend) {
  std::string ctx = context.empty() ? "an ordinary member of the public" : context;
  auto assigned = personality::assign_traits(ctx, seed, style_backend);
  auto traits = personality::redistribute_medium(assigned.traits, seed);
  profile.traits = traits;
  profile.behavioral_style = personality::render_style(traits, ctx, style_backend);
}

}  // namespace

EpisodeConfig build_episode(const SourceRecord& elements, EnvKind env_kind, std::uint64_t seed,
                            JudgeBackend* style_backend) {
  EpisodeConfig config;
  config.env_kind = env_kind;
  config.episode_id = text::lower(to_code(env_kind)) + "-" + std::to_string(seed);
  config.max_turns = default_max_turns(env_kind);
  config.seed = seed;
  const std::string context = personality_context(elements, env_kind);

  switch (env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: {
      if (!std::holds_alternative<TopicList>(elements))
        throw std::invalid_argument("Level-I episodes require a topic list record");
      const auto& topics = std::get<TopicList>(elements);
      RoleProfile pub;
      pub.role_id = "public";
      pub.role_kind = RoleKind::GeneralPublic;
      auto view = prompt_view(topics);
      if (env_kind == EnvKind::KnowledgeQuestioning) view.background.reset();
      pub.payload = std::move(view);
      give_personality(pub, context, seed, style_backend);
      config.participants["public"] = std::move(pub);

      RoleProfile agent;
      agent.role_id = "agent";
      agent.role_kind = RoleKind::LegalAgent;
      config.participants["agent"] = std::move(agent);
      config.ground_truth = topics;
      break;
    }
    case EnvKind::ComplaintDrafting: {
      if (!std::holds_alternative<CivilCaseElements>(elements))
        throw std::invalid_argument("complaint drafting episodes require a civil case record");
      const auto& truth = std::get<CivilCaseElements>(elements);
      RoleProfile plaintiff;
      plaintiff.role_id = "plaintiff";
      plaintiff.role_kind = RoleKind::Plaintiff;
      plaintiff.attributes = truth.plaintiff;
      CivilPartyPayload payload;
      payload.defendant = truth.defendant;
      payload.claims = truth.claims;
      payload.case_details = truth.case_details;
      payload.plaintiff_evidence = truth.plaintiff_evidence;
      plaintiff.payload = std::move(payload);
      give_personality(plaintiff, context, seed, style_backend);
      config.participants["plaintiff"] = std::move(plaintiff);

      RoleProfile agent;
      agent.role_id = "agent";
      agent.role_kind = RoleKind::LegalAgent;
      config.participants["agent"] = std::move(agent);
      config.ground_truth = truth;
      break;
    }
    case EnvKind::DefenceDrafting: {
      if (!std::holds_alternative<CivilCaseElements>(elements))
        throw std::invalid_argument("defence drafting episodes require a civil case record");
      const auto& truth = std::get<CivilCaseElements>(elements);
      RoleProfile defendant;
      defendant.role_id = "defendant";
      defendant.role_kind = RoleKind::Defendant;
      defendant.attributes = truth.defendant;
      CivilPartyPayload payload;
      // The defendant drafts against the complaint: plaintiff identity and
      // claims are known to them.
      payload.plaintiff = truth.plaintiff;
      payload.claims = truth.claims;
      payload.case_details = truth.case_details;
      payload.defence_statement = truth.defence_statement;
      payload.defendant_evidence = truth.defendant_evidence;
      defendant.payload = std::move(payload);
      give_personality(defendant, context, seed, style_backend);
      config.participants["defendant"] = std::move(defendant);

      RoleProfile agent;
      agent.role_id = "agent";
      agent.role_kind = RoleKind::LegalAgent;
      config.participants["agent"] = std::move(agent);
      config.ground_truth = truth;
      break;
    }
    case EnvKind::CivilCourt: {
      if (!std::holds_alternative<CivilCaseElements>(elements))
        throw std::invalid_argument("civil court episodes require a civil case record");
      const auto& truth = std::get<CivilCaseElements>(elements);
      RoleProfile pl;
      pl.role_id = "plaintiff_lawyer";
      pl.role_kind = RoleKind::PlaintiffLawyer;
      CivilPartyPayload ppl;
      ppl.plaintiff = truth.plaintiff;
      ppl.claims = truth.claims;
      ppl.case_details = truth.case_details;
      ppl.plaintiff_evidence = truth.plaintiff_evidence;
      pl.payload = std::move(ppl);
      config.participants["plaintiff_lawyer"] = std::move(pl);

      RoleProfile dl;
      dl.role_id = "defendant_lawyer";
      dl.role_kind = RoleKind::DefendantLawyer;
      CivilPartyPayload pdl;
      pdl.defendant = truth.defendant;
      pdl.defence_statement = truth.defence_statement;
      pdl.case_details = truth.case_details;
      pdl.defendant_evidence = truth.defendant_evidence;
      dl.payload = std::move(pdl);
      config.participants["defendant_lawyer"] = std::move(dl);

      RoleProfile judge;
      judge.role_id = "judge";
      judge.role_kind = RoleKind::Judge;
      config.participants["judge"] = std::move(judge);
      config.ground_truth = truth;
      break;
    }
    case EnvKind::CriminalCourt: {
      if (!std::holds_alternative<CriminalCaseElements>(elements))
        throw std::invalid_argument("criminal court episodes require a criminal case record");
      const auto& truth = std::get<CriminalCaseElements>(elements);
      RoleProfile def;
      def.role_id = "defendant";
      def.role_kind = RoleKind::Defendant;
      def.attributes = truth.defendant.attributes;
      CriminalPartyPayload pdef;
      pdef.defendant = truth.defendant;
      pdef.plea_statement = truth.plea_statement;
      pdef.charges = truth.charges;
      def.payload = std::move(pdef);
      give_personality(def, truth.plea_statement.empty() ? "criminal defendant"
                                                         : truth.plea_statement,
                       seed, style_backend);
      config.participants["defendant"] = std::move(def);

      RoleProfile dl;
      dl.role_id = "defendant_lawyer";
      dl.role_kind = RoleKind::DefendantLawyer;
      CriminalPartyPayload pdl;
      pdl.defendant = truth.defendant;
      pdl.lawyer_defence = truth.lawyer_defence;
      pdl.charges = truth.charges;
      dl.payload = std::move(pdl);
      config.participants["defendant_lawyer"] = std::move(dl);

      RoleProfile proc;
      proc.role_id = "procurator";
      proc.role_kind = RoleKind::Procurator;
      CriminalPartyPayload pproc;
      pproc.charges = truth.charges;
      pproc.procurator_opinion = truth.procurator_opinion;
      proc.payload = std::move(pproc);
      config.participants["procurator"] = std::move(proc);

      RoleProfile judge;
      judge.role_id = "judge";
      judge.role_kind = RoleKind::Judge;
      config.participants["judge"] = std::move(judge);
      config.ground_truth = truth;
      break;
    }
  }
  return config;
}

// ---------------------------------------------------------------------------
// synthetic fixtures
// ---------------------------------------------------------------------------

namespace {

struct NamePool {
  std::vector<std::string> names = {"Li Wei",   "Wang Fang", "Zhang Min", "Chen Jie",
                                    "Liu Yang", "Zhao Lei",  "Sun Na",    "Zhou Qiang"};
  std::vector<std::string> ethnicities = {"Han", "Hui", "Man", "Zhuang"};
  std::vector<std::string> addresses = {
      "12 Jianguo Road, Chaoyang District, Beijing",
      "88 Nanjing West Road, Jing'an District, Shanghai",
      "5 Donghu Lane, Wuchang District, Wuhan",
      "23 Tianhe North Road, Tianhe District, Guangzhou"};
  std::vector<std::string> corporations = {"Huaxin Trading Co., Ltd.",
                                           "Mingyuan Construction Co., Ltd.",
                                           "Ruifeng Logistics Co., Ltd."};
};

PersonAttributes synth_person(Rng& rng, const NamePool& pool) {
  PersonAttributes a;
  a.name = pool.names[rng.next_below(pool.names.size())];
  a.gender = rng.next_below(2) == 0 ? Gender::Female : Gender::Male;
  a.ethnicity = pool.ethnicities[rng.next_below(pool.ethnicities.size())];
  int year = 1960 + static_cast<int>(rng.next_below(40));
  int month = 1 + static_cast<int>(rng.next_below(12));
  int day = 1 + static_cast<int>(rng.next_below(28));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
  a.birthdate = buf;
  a.address = pool.addresses[rng.next_below(pool.addresses.size())];
  return a;
}

PersonAttributes synth_corporation(Rng& rng, const NamePool& pool) {
  PersonAttributes a;
  a.name = pool.corporations[rng.next_below(pool.corporations.size())];
  a.entity_kind = EntityKind::Corporation;
  a.address = pool.addresses[rng.next_below(pool.addresses.size())];
  a.representative_name = pool.names[rng.next_below(pool.names.size())];
  return a;
}

struct CivilCaseTemplate {
  std::vector<std::string> claims;
  std::string details;
  std::string defence;
  std::vector<std::string> p_evidence;
  std::vector<std::string> d_evidence;
  std::string judgment;
  std::string findings;
  std::vector<std::string> laws;
};

const std::vector<CivilCaseTemplate>& civil_templates() {
  static const std::vector<CivilCaseTemplate> t = {
      {{"repay the loan principal of 50000 yuan", "pay interest of 2400 yuan"},
       "On 2025-03-02 the defendant borrowed 50000 yuan from the plaintiff against a promissory "
       "note with repayment due on 2025-06-02, and has not repaid despite repeated demands.",
       "The repayment period was extended orally by both sides and the claimed interest exceeds "
       "the agreed rate.",
       {"promissory note dated 2025-03-02", "bank transfer record of 50000 yuan"},
       {"chat records about extending the repayment period"},
       "The defendant shall repay the plaintiff the principal of 50000 yuan together with "
       "interest of 2400 yuan within ten days after this judgment takes effect.",
       "A valid private loan relationship was established and the defendant failed to repay on "
       "time; the alleged oral extension lacks supporting proof.",
       {"Civil Code Article 667", "Civil Code Article 675"}},
      {{"refund the purchase price of 12800 yuan", "compensate inspection fees of 600 yuan"},
       "The plaintiff bought a batch of flooring from the defendant on 2025-01-15; after "
       "installation the boards cracked and an inspection found the moisture content exceeded "
       "the national standard.",
       "The cracking was caused by improper installation by a third party rather than by any "
       "quality defect.",
       {"sales contract of 2025-01-15", "inspection report no. 2025-117"},
       {"installation acceptance sheet signed by the plaintiff"},
       "The contract is rescinded; the defendant shall refund 12800 yuan and compensate "
       "inspection fees of 600 yuan within fifteen days after this judgment takes effect.",
       "The goods failed to conform to the agreed quality standard and the defect was not "
       "attributable to installation.",
       {"Civil Code Article 577", "Civil Code Article 617"}},
      {{"compensate vehicle repair costs of 8600 yuan"},
       "On 2025-04-20 the defendant reversed out of a parking spot and struck the plaintiff's "
       "parked car, damaging the rear door; the traffic police determined the defendant fully "
       "responsible.",
       "The repair invoice includes items unrelated to this collision and the amount is "
       "excessive.",
       {"traffic accident responsibility determination", "repair invoice of 8600 yuan"},
       {"photos of the vehicle taken before repair"},
       "The defendant shall compensate the plaintiff vehicle repair costs of 8600 yuan within "
       "ten days after this judgment takes effect.",
       "The defendant's fault caused the damage and the claimed repair items correspond to the "
       "collision.",
       {"Civil Code Article 1165", "Civil Code Article 1184"}},
  };
  return t;
}

struct CriminalCaseTemplate {
  std::vector<std::string> charges;
  std::string opinion;
  std::string plea;
  std::string lawyer_defence;
  std::string crime;
  std::int64_t months;
  std::int64_t fine;
  std::string findings;
  std::vector<std::string> laws;
  std::string occupation;
  std::string education;
  std::string custody;
};

const std::vector<CriminalCaseTemplate>& criminal_templates() {
  static const std::vector<CriminalCaseTemplate> t = {
      {{"theft"},
       "The defendant secretly took property of considerable value; punishment according to law "
       "is recommended, with leniency for the voluntary confession.",
       "I plead guilty and regret my actions.",
       "The defence notes the confession, the restitution already paid, and asks for leniency.",
       "theft",
       11,
       2000,
       "The defendant stole a mobile phone and cash worth 6800 yuan in total from a staff locker "
       "room and confessed after arrest.",
       {"Criminal Law Article 264", "Criminal Law Article 67(3)"},
       "warehouse keeper",
       "junior high school",
       "detained at the municipal detention center"},
      {{"fraud"},
       "The defendant fabricated an investment project and obtained funds from multiple victims; "
       "firm punishment is recommended.",
       "I accept the facts but believed the project could still pay back.",
       "The defence argues part of the funds were returned before the case was filed.",
       "fraud",
       30,
       10000,
       "The defendant fabricated a non-existent storage investment project and obtained 90000 "
       "yuan from three victims, of which 20000 yuan was returned.",
       {"Criminal Law Article 266"},
       "self-employed vendor",
       "senior high school",
       "released on bail pending trial"},
      {{"intentional injury"},
       "The defendant injured the victim after a neighborhood dispute; the injury was assessed "
       "as minor level two.",
       "I plead guilty; it happened in a moment of anger and I have apologized.",
       "The defence cites the mutual quarrel, the compensation paid, and the victim's "
       "forgiveness.",
       "intentional injury",
       8,
       0,
       "During a quarrel over a shared passage the defendant struck the victim causing a minor "
       "injury of level two; compensation was paid and forgiveness obtained.",
       {"Criminal Law Article 234"},
       "fruit grower",
       "primary school",
       "under residential surveillance"},
  };
  return t;
}

struct TopicTheme {
  std::string theme;
  std::string occupation;
  std::string background;
  // question, binary truth or provision/phrase, kinds
  std::vector<TopicItem> topics;
};

const std::vector<TopicTheme>& topic_themes() {
  static const std::vector<TopicTheme> t = [] {
    std::vector<TopicTheme> v;
    {
      TopicTheme th;
      th.theme = "Private lending between individuals";
      th.occupation = "small restaurant owner";
      th.background =
          "Two years ago I lent 30000 yuan to a former classmate against a handwritten note; "
          "the agreed repayment date passed six months ago and he stopped answering my calls.";
      th.topics = {
          {"t1", TopicKind::Binary, "Can a lender charge interest above the statutory protection cap?",
           "no", GroundTruthKind::YesNo},
          {"t2", TopicKind::Binary,
           "Is a loan between individuals valid when there is no written contract?", "conditional",
           GroundTruthKind::YesNo},
          {"t3", TopicKind::OpenEnded,
           "Which provision governs the borrower's obligation to repay the loan on time?",
           "Civil Code Article 675", GroundTruthKind::LegalProvision},
          {"t4", TopicKind::OpenEnded,
           "What should a lender do when the borrower refuses to repay on time?",
           "Collect the loan evidence and sue in the competent people's court within the "
           "limitation period.",
           GroundTruthKind::LegalPhrase},
      };
      v.push_back(th);
    }
    {
      TopicTheme th;
      th.theme = "Termination of an employment contract";
      th.occupation = "assembly line worker";
      th.background =
          "My employer dismissed me last month without written notice after I asked about "
          "unpaid overtime; I worked there for four years under a signed contract.";
      th.topics = {
          {"t1", TopicKind::Binary,
           "Can an employer dismiss an employee without any compensation when no misconduct is "
           "proven?",
           "no", GroundTruthKind::YesNo},
          {"t2", TopicKind::Binary, "Does resigning voluntarily always forfeit severance pay?",
           "conditional", GroundTruthKind::YesNo},
          {"t3", TopicKind::OpenEnded,
           "Which provision sets the economic compensation owed on unlawful termination?",
           "Labor Contract Law Article 87", GroundTruthKind::LegalProvision},
          {"t4", TopicKind::OpenEnded,
           "What is the first step to challenge a dismissal?",
           "Apply for labor dispute arbitration within one year before filing a lawsuit.",
           GroundTruthKind::LegalPhrase},
      };
      v.push_back(th);
    }
    {
      TopicTheme th;
      th.theme = "Consumer rights after buying defective goods";
      th.occupation = "school teacher";
      th.background =
          "I bought a water heater online; it leaked in the first week and the seller refuses "
          "to refund, offering only a repair after three failed attempts.";
      th.topics = {
          {"t1", TopicKind::Binary,
           "Can a consumer return goods bought online within seven days without giving reasons?",
           "yes", GroundTruthKind::YesNo},
          {"t2", TopicKind::Binary,
           "Is the seller always liable for triple compensation when goods are defective?",
           "conditional", GroundTruthKind::YesNo},
          {"t3", TopicKind::OpenEnded,
           "Which provision grants punitive compensation for knowingly selling defective goods?",
           "Consumer Protection Law Article 55", GroundTruthKind::LegalProvision},
          {"t4", TopicKind::OpenEnded,
           "What remedies does a consumer have when negotiation with the seller fails?",
           "Complain to the consumer association or market regulator, or sue in the people's "
           "court.",
           GroundTruthKind::LegalPhrase},
      };
      v.push_back(th);
    }
    return v;
  }();
  return t;
}

TopicList synth_topic_list(Rng& rng) {
  const auto& themes = topic_themes();
  const auto& th = themes[rng.next_below(themes.size())];
  TopicList list;
  list.theme = th.theme;
  list.background = th.background;
  list.occupation = th.occupation;
  list.topics = th.topics;
  return list;
}

CivilCaseElements synth_civil_case(Rng& rng, const NamePool& pool) {
  const auto& templates = civil_templates();
  const auto& t = templates[rng.next_below(templates.size())];
  CivilCaseElements e;
  e.plaintiff = synth_person(rng, pool);
  // one in three disputes involves a corporate defendant
  e.defendant = rng.next_below(3) == 0 ? synth_corporation(rng, pool) : synth_person(rng, pool);
  while (e.defendant.name == e.plaintiff.name) e.defendant = synth_person(rng, pool);
  e.claims = t.claims;
  e.case_details = t.details;
  e.defence_statement = t.defence;
  e.plaintiff_evidence = t.p_evidence;
  e.defendant_evidence = t.d_evidence;
  e.court_judgment = t.judgment;
  e.court_findings = t.findings;
  e.applied_laws = t.laws;
  return e;
}

CriminalCaseElements synth_criminal_case(Rng& rng, const NamePool& pool) {
  const auto& templates = criminal_templates();
  const auto& t = templates[rng.next_below(templates.size())];
  CriminalCaseElements e;
  e.defendant.attributes = synth_person(rng, pool);
  e.defendant.occupation = t.occupation;
  e.defendant.education = t.education;
  e.defendant.custody_status = t.custody;
  e.plea_statement = t.plea;
  e.lawyer_defence = t.lawyer_defence;
  e.charges = t.charges;
  e.procurator_opinion = t.opinion;
  e.verdict_crime = t.crime;
  e.verdict_sentence_months = t.months;
  e.verdict_fine_amount = t.fine;
  e.court_findings = t.findings;
  e.applied_laws = t.laws;
  return e;
}

SourceRecord synth_record(EnvKind env, Rng& rng, const NamePool& pool) {
  switch (env) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: return synth_topic_list(rng);
    case EnvKind::CriminalCourt: return synth_criminal_case(rng, pool);
    default: return synth_civil_case(rng, pool);
  }
}

}  // namespace

std::vector<EpisodeConfig> synth_fixtures(std::uint64_t seed,
                                          const std::map<EnvKind, int>& counts) {
  NamePool pool;
  std::vector<EpisodeConfig> configs;
  for (EnvKind env : all_env_kinds()) {
    auto it = counts.find(env);
    int n = it == counts.end() ? 0 : it->second;
    for (int i = 0; i < n; ++i) {
      std::uint64_t episode_seed = fnv1a_mix(fnv1a(to_code(env)), seed) % 900000 + i;
      Rng rng(fnv1a_mix(seed, episode_seed));
      auto record = synth_record(env, rng, pool);
      configs.push_back(build_episode(record, env, episode_seed));
    }
  }
  return configs;
}

std::vector<EpisodeConfig> synth_fixtures(std::uint64_t seed, int per_env) {
  std::map<EnvKind, int> counts;
  for (EnvKind env : all_env_kinds()) counts[env] = per_env;
  return synth_fixtures(seed, counts);
}

// ---------------------------------------------------------------------------
// scripted casts
// ---------------------------------------------------------------------------

std::string regex_escape(const std::string& literal) {
  static const std::string specials = R"(\^$.|?*+()[]{})";
  std::string out;
  out.reserve(literal.size());
  for (char c : literal) {
    if (specials.find(c) != std::string::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

namespace {

std::string attrs_line(const PersonAttributes& a) {
  std::string out = a.name;
  if (a.entity_kind == EntityKind::Corporation) {
    out += " (corporation)";
    if (a.representative_name) out += ", legal representative " + *a.representative_name;
  } else {
    out += ", " + to_code(a.gender);
    if (!a.ethnicity.empty()) out += ", " + a.ethnicity;
    if (!a.birthdate.empty()) out += ", born " + a.birthdate;
  }
  if (!a.address.empty()) out += ", residing at " + a.address;
  return out;
}

std::string binary_answer_text(const std::string& truth) {
  if (truth == "yes") return "Yes. That is allowed under the law.";
  if (truth == "no") return "No. The law does not permit that.";
  return "It depends on the circumstances; the answer is conditional on the specific facts.";
}

CastScripts perfect_level1(const EpisodeConfig& config) {
  const auto& topics = std::get<TopicList>(config.ground_truth);
  RoleScript pub;
  RoleScript agent;
  bool first = true;
  for (const auto& t : topics.topics) {
    std::string marker = "[topic:" + t.id + "]";
    std::string question = (first ? "Hello, I need some guidance. " : "") + marker + " " + t.question;
    first = false;
    pub.entries.push_back({".*", question});
    std::string answer;
    if (t.kind == TopicKind::Binary) {
      answer = marker + " " + binary_answer_text(t.ground_truth);
    } else if (t.ground_truth_kind == GroundTruthKind::LegalProvision) {
      answer = marker + " Under " + t.ground_truth + ", that is the governing rule.";
    } else {
      answer = marker + " " + t.ground_truth;
    }
    agent.entries.push_back({regex_escape(marker), answer});
  }
  pub.default_response = "Thank you, that covers everything.";
  agent.default_response = "Is there anything else I can help with?";
  return {{"public", pub}, {"agent", agent}};
}

CastScripts perfect_drafting(const EpisodeConfig& config) {
  const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
  const bool complaint = config.env_kind == EnvKind::ComplaintDrafting;

  RoleScript client;
  RoleScript agent;
  if (complaint) {
    client.entries.push_back(
        {".*", "I want to sue " + truth.defendant.name + ". Please draft my complaint."});
    client.entries.push_back(
        {".*", "Here is everything: claims: " + metrics::claims_reference(truth) +
                   "; facts: " + truth.case_details +
                   "; evidence: " + metrics::plaintiff_evidence_reference(truth) + "."});
    agent.entries.push_back(
        {".*",
         "I can help. Please confirm the parties' details, your claims, the facts, and your "
         "evidence."});
    std::string document = std::string(kDocumentBegin) + "\n" +
                           "Plaintiff: " + attrs_line(truth.plaintiff) + "\n" +
                           "Defendant: " + attrs_line(truth.defendant) + "\n" +
                           "Claims: " + metrics::claims_reference(truth) + "\n" +
                           "Facts and Legal Grounds: " + metrics::facts_reference(truth) + "\n" +
                           "Evidence and Sources, Names and Addresses of Witnesses: " +
                           metrics::plaintiff_evidence_reference(truth) + "\n" + kDocumentEnd;
    agent.entries.push_back({regex_escape("Here is everything"), document});
  } else {
    client.entries.push_back(
        {".*", "I received a complaint from " + truth.plaintiff.name +
                   " and need a statement of defence."});
    client.entries.push_back(
        {".*", "Here is everything: my defence: " + truth.defence_statement +
                   "; my evidence: " + metrics::defendant_evidence_reference(truth) + "."});
    agent.entries.push_back(
        {".*",
         "I can help. Please confirm your details, your defence arguments, and your evidence."});
    std::string document = std::string(kDocumentBegin) + "\n" +
                           "Defendant: " + attrs_line(truth.defendant) + "\n" +
                           "Defence Arguments: " + metrics::defence_reference(truth) + "\n" +
                           "Case Id: (2025) Civil First Instance No. 1024\n" +
                           "Parties and Cause of Action: " + metrics::respondent_reference(truth) +
                           "\n" +
                           "Evidence and Sources, Names and Addresses of Witnesses: " +
                           metrics::defendant_evidence_reference(truth) + "\n" + kDocumentEnd;
    agent.entries.push_back({regex_escape("Here is everything"), document});
  }
  client.default_response = "That is all correct.";
  agent.default_response = "Noted.";
  std::string client_id = complaint ? "plaintiff" : "defendant";
  return {{client_id, client}, {"agent", agent}};
}

CastScripts perfect_civil_court(const EpisodeConfig& config) {
  const auto& truth = std::get<CivilCaseElements>(config.ground_truth);
  RoleScript judge;
  judge.entries.push_back(
      {".*",
       "@plaintiff_lawyer: This court is now in session for this civil case. We begin court "
       "preparation: I will verify the identities of the parties; please confirm yours. I "
       "inform both parties of their litigation rights, including the right to apply for "
       "recusal."});
  judge.entries.push_back(
      {".*", "@plaintiff_lawyer: We enter court investigation. Please state your claims."});
  judge.entries.push_back(
      {".*", "@defendant_lawyer: Please respond to the claims and state your defence."});
  judge.entries.push_back(
      {".*", "@plaintiff_lawyer: Please present your evidence; we will proceed to "
             "cross-examination."});
  judge.entries.push_back(
      {".*", "@defendant_lawyer: We now begin the debate. Please give your final statement."});
  judge.entries.push_back(
      {".*", "@plaintiff_lawyer: Before the decision, are the parties willing to accept "
             "mediation?"});
  judge.entries.push_back(
      {".*", "@plaintiff_lawyer: Mediation having failed, I will now announce the judgment.\n" +
                 std::string(kJudgmentBegin) + "\nRULING: " + truth.court_judgment +
                 "\nREASONING: " + truth.court_findings +
                 "\nLAWS: " + text::join(truth.applied_laws, "; ") + "\n" + kJudgmentEnd});

  RoleScript pl;
  pl.entries.push_back({".*",
                        "I am counsel for the plaintiff " + truth.plaintiff.name +
                            "; identity confirmed, no recusal requested."});
  pl.entries.push_back({".*", "The plaintiff claims: " + metrics::claims_reference(truth) + "."});
  pl.entries.push_back(
      {".*", "Our evidence: " + metrics::plaintiff_evidence_reference(truth) + "."});
  pl.entries.push_back({".*", "The parties do not accept mediation."});
  pl.default_response = "Understood, Your Honor.";

  RoleScript dl;
  dl.entries.push_back({".*", "We respond: " + truth.defence_statement});
  dl.entries.push_back(
      {".*", "Our final statement: the defence stands on its submitted arguments and evidence: " +
                 metrics::defendant_evidence_reference(truth) + "."});
  dl.default_response = "Understood, Your Honor.";

  return {{"judge", judge}, {"plaintiff_lawyer", pl}, {"defendant_lawyer", dl}};
}

CastScripts perfect_criminal_court(const EpisodeConfig& config) {
  const auto& truth = std::get<CriminalCaseElements>(config.ground_truth);
  RoleScript judge;
  judge.entries.push_back(
      {".*",
       "@defendant: This court is now in session for this criminal case. We begin court "
       "preparation. Please confirm your identity so I can verify your identity. You have the "
       "right to defence and the right to apply for recusal."});
  judge.entries.push_back(
      {".*", "@procurator: We enter court investigation. Please read the indictment."});
  judge.entries.push_back(
      {".*", "@defendant: You have heard the charges. Please give your response to the "
             "charges."});
  judge.entries.push_back(
      {".*", "@procurator: Please present your evidence; we will proceed to cross-examination."});
  judge.entries.push_back(
      {".*", "@defendant_lawyer: Does the defence wish to be heard on the evidence?"});
  judge.entries.push_back(
      {".*", "@defendant: I will now announce the verdict.\n" + std::string(kJudgmentBegin) +
                 "\nCRIME: " + truth.verdict_crime +
                 "\nSENTENCE_MONTHS: " + std::to_string(truth.verdict_sentence_months) +
                 "\nFINE: " + std::to_string(truth.verdict_fine_amount) +
                 "\nREASONING: " + truth.court_findings +
                 "\nLAWS: " + text::join(truth.applied_laws, "; ") + "\n" + kJudgmentEnd});

  RoleScript def;
  def.entries.push_back({".*", "I am " + truth.defendant.attributes.name +
                                   "; identity confirmed, no recusal requested."});
  def.entries.push_back({".*", truth.plea_statement});
  def.default_response = "Yes, Your Honor.";

  RoleScript proc;
  proc.entries.push_back(
      {".*", "The indictment charges the defendant with " + text::join(truth.charges, ", ") +
                 ". " + truth.procurator_opinion});
  proc.entries.push_back({".*", "The prosecution presents its documentary evidence for "
                                "examination."});
  proc.default_response = "Nothing further from the prosecution.";

  RoleScript dl;
  dl.entries.push_back({".*", truth.lawyer_defence});
  dl.default_response = "Nothing further from the defence.";

  return {{"judge", judge},
          {"defendant", def},
          {"procurator", proc},
          {"defendant_lawyer", dl}};
}

}  // namespace

CastScripts perfect_cast_scripts(const EpisodeConfig& config) {
  switch (config.env_kind) {
    case EnvKind::KnowledgeQuestioning:
    case EnvKind::LegalConsultation: return perfect_level1(config);
    case EnvKind::ComplaintDrafting:
    case EnvKind::DefenceDrafting: return perfect_drafting(config);
    case EnvKind::CivilCourt: return perfect_civil_court(config);
    case EnvKind::CriminalCourt: return perfect_criminal_court(config);
  }
  return {};
}

CastScripts degenerate_cast_scripts(const EpisodeConfig& config) {
  CastScripts scripts = perfect_cast_scripts(config);
  for (const auto& [role_id, profile] : config.participants) {
    if (!is_agent_under_test(profile.role_kind)) continue;
    scripts[role_id] = RoleScript{{}, "..."};
  }
  return scripts;
}

CastScripts stalling_cast_scripts(const EpisodeConfig& config) {
  CastScripts scripts;
  for (const auto& [role_id, profile] : config.participants)
    scripts[role_id] = RoleScript{{}, "Let me think about it a bit longer."};
  return scripts;
}

// ---------------------------------------------------------------------------
// script library
// ---------------------------------------------------------------------------

void ScriptLibrary::add(const std::string& episode_id, CastScripts scripts) {
  episodes_[episode_id] = std::move(scripts);
}

const RoleScript* ScriptLibrary::find(const std::string& episode_id,
                                      const std::string& role_id) const {
  auto it = episodes_.find(episode_id);
  if (it == episodes_.end()) return nullptr;
  auto rit = it->second.find(role_id);
  if (rit == it->second.end()) return nullptr;
  return &rit->second;
}

std::string ScriptLibrary::to_json_text() const {
  Json j{{"schema_version", kSchemaVersion}, {"fallback_default", fallback_default_}};
  Json eps = Json::object();
  for (const auto& [episode_id, cast] : episodes_) {
    Json roles = Json::object();
    for (const auto& [role_id, script] : cast) {
      Json entries = Json::array();
      for (const auto& e : script.entries)
        entries.push_back(Json{{"trigger", e.trigger}, {"response", e.response}});
      roles[role_id] = Json{{"default", script.default_response}, {"script", std::move(entries)}};
    }
    eps[episode_id] = Json{{"roles", std::move(roles)}};
  }
  j["episodes"] = std::move(eps);
  return dump_canonical(j);
}

ScriptLibrary ScriptLibrary::from_json_text(const std::string& text) {
  ScriptLibrary lib;
  auto j = parse_json(text);
  JsonReader r(j);
  lib.fallback_default_ = r.string_field_or("fallback_default", "...");
  if (!r.has("episodes")) return lib;
  auto eps = r.at("episodes");
  for (auto it = eps.raw().begin(); it != eps.raw().end(); ++it) {
    auto er = eps.at(it.key());
    CastScripts cast;
    auto roles = er.at("roles");
    for (auto rit = roles.raw().begin(); rit != roles.raw().end(); ++rit) {
      auto rr = roles.at(rit.key());
      RoleScript script;
      script.default_response = rr.string_field_or("default", "Understood.");
      if (rr.has("script")) {
        auto arr = rr.at("script");
        for (std::size_t i = 0; i < arr.array_size(); ++i) {
          auto e = arr.at(i);
          script.entries.push_back({e.string_field("trigger"), e.string_field("response")});
        }
      }
      cast[rit.key()] = std::move(script);
    }
    lib.episodes_[it.key()] = std::move(cast);
  }
  return lib;
}

ScriptLibrary ScriptLibrary::from_file(const std::string& path) {
  return from_json_text(read_text_file(path));
}

ChatBackendPtr ScriptLibrary::make_backend(const EpisodeConfig& config,
                                           const std::string& role_id) const {
  if (const RoleScript* script = find(config.episode_id, role_id))
    return std::make_shared<ScriptedBackend>(script->entries, script->default_response);
  return std::make_shared<ScriptedBackend>(std::vector<ScriptEntry>{}, fallback_default_);
}

ScriptLibrary library_for(const std::vector<EpisodeConfig>& configs,
                          CastScripts (*builder)(const EpisodeConfig&)) {
  ScriptLibrary lib;
  for (const auto& config : configs) lib.add(config.episode_id, builder(config));
  return lib;
}

}  // namespace legalsim::corpus
