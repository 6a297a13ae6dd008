// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "legalsim/corpus.hpp"
#include "legalsim/envs.hpp"
#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/personality.hpp"
#include "legalsim/procedures.hpp"
#include "legalsim/report.hpp"
#include "legalsim/rng.hpp"
#include "legalsim/runner.hpp"

using namespace legalsim;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

void run_criterion(int number, const std::string& name, double budget_s,
                   const std::function<void(Check&)>& body) {
  Check check;
  auto start = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.expect(false, std::string("exception: ") + e.what());
  }
  double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0 && elapsed > budget_s)
    check.expect(false, "runtime " + std::to_string(elapsed) + "s over budget");
  std::printf("%s criterion %d: %s (%.2fs)\n", check.ok ? "PASS" : "FAIL", number, name.c_str(),
              elapsed);
  if (!check.ok) {
    std::printf("       -> %s\n", check.detail.c_str());
    ++g_failures;
  }
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("legalsim_accept_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub) const { return (path / sub).string(); }
};

runner::BackendSet scripted_backends(const std::vector<EpisodeConfig>& configs,
                                     corpus::CastScripts (*builder)(const EpisodeConfig&)) {
  auto library =
      std::make_shared<corpus::ScriptLibrary>(corpus::library_for(configs, builder));
  runner::BackendSet backends;
  backends.agent = [library](const EpisodeConfig& c, const std::string& r) {
    return library->make_backend(c, r);
  };
  backends.environment = backends.agent;
  backends.judge = std::make_shared<HeuristicJudge>();
  return backends;
}

Turn spoken(int index, const std::string& speaker, const std::string& content) {
  Turn t;
  t.index = index;
  t.speaker = speaker;
  t.content = content;
  return t;
}

// --- criterion 1 -----------------------------------------------------------

void verdict_formula(Check& check) {
  Rng rng(1001);
  for (int i = 0; i < 1000; ++i) {
    std::int64_t p = static_cast<std::int64_t>(rng.next_below(1000000));
    std::int64_t a = static_cast<std::int64_t>(rng.next_below(1000000));
    long double oracle = fabsl(logl(static_cast<long double>(p) + 1.0L) -
                               logl(static_cast<long double>(a) + 1.0L));
    double got = metrics::log_deviation(p, a);
    check.expect(std::fabs(got - static_cast<double>(oracle)) < 1e-12,
                 "log deviation off for (" + std::to_string(p) + "," + std::to_string(a) + ")");
  }
  CriminalCaseElements truth;
  truth.defendant.attributes.name = "X";
  truth.charges = {"theft"};
  truth.verdict_crime = "theft";
  truth.verdict_sentence_months = 35;
  truth.verdict_fine_amount = 2000;
  StructuredJudgment predicted;
  predicted.body = CriminalJudgment{"theft", 11, 2000, "", {}};
  auto ver = metrics::score_ver(predicted, truth);
  long double expected = logl(3.0L) / 2.0L;
  check.expect(std::fabs(ver.raw - static_cast<double>(expected)) < 1e-12,
               "VER_raw(11,35) != ln(3)/2");
}

// --- criterion 2 -----------------------------------------------------------

void format_oracle(Check& check) {
  const auto& tmpl = metrics::complaint_template();
  const int n = static_cast<int>(tmpl.labels.size());
  int cases = 0;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i)
      if (mask & (1 << i)) subset.push_back(i);
    std::sort(subset.begin(), subset.end());
    do {
      std::string doc = "header line\n";
      for (int idx : subset) doc += tmpl.labels[idx] + ": content\n";
      double oracle_label = static_cast<double>(subset.size()) / n;
      double oracle_seq = std::is_sorted(subset.begin(), subset.end()) ? 1.0 : 0.0;
      double oracle_for = oracle_seq * oracle_label;
      auto s = metrics::score_for(doc, tmpl);
      check.expect(s.label == oracle_label && s.value == oracle_for,
                   "FOR mismatch on mask " + std::to_string(mask));
      ++cases;
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  check.expect(cases == 326, "expected 326 oracle documents");
}

// --- criterion 3 -----------------------------------------------------------

void pfs_battery(Check& check) {
  const auto& procedure = procedures::civil_court();
  auto evaluated = procedures::default_evaluated_stages(procedure);

  // flatten the action list
  struct ActionRef {
    std::size_t stage;
    std::size_t action;
    std::string pattern;
  };
  std::vector<ActionRef> actions;
  for (std::size_t s = 0; s < procedure.stages.size(); ++s)
    for (std::size_t a = 0; a < procedure.stages[s].actions.size(); ++a)
      actions.push_back({s, a, procedure.stages[s].actions[a].match_patterns.front()});

  Rng rng(3003);
  for (int case_no = 0; case_no < 30; ++case_no) {
    // hand-label a coverage set
    std::set<std::size_t> chosen;
    std::uint64_t mask = rng.next_below(1ull << actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i)
      if (mask & (1ull << i)) chosen.insert(i);
    bool single_turn = chosen.size() >= 2 && case_no % 3 == 0;

    // expected score straight from the coverage labels
    int eval_actions = 0, matched = 0, eval_stages = 0, complete = 0;
    for (std::size_t s = 0; s < procedure.stages.size(); ++s) {
      if (!evaluated.count(procedure.stages[s].stage_id)) continue;
      ++eval_stages;
      bool stage_complete = true;
      for (std::size_t a = 0; a < procedure.stages[s].actions.size(); ++a) {
        ++eval_actions;
        bool hit = false;
        for (std::size_t i = 0; i < actions.size(); ++i)
          if (actions[i].stage == s && actions[i].action == a && chosen.count(i)) hit = true;
        if (hit) ++matched;
        if (!hit) stage_complete = false;
      }
      if (stage_complete) ++complete;
    }
    double sta = static_cast<double>(complete) / eval_stages;
    double act = static_cast<double>(matched) / eval_actions;
    double expected = chosen.empty() ? 0.0
                      : single_turn  ? 0.0
                                     : (sta + act) / 2.0;
    if (!single_turn && chosen.size() == 1) expected = 0.0;  // one turn holds every match

    // build the transcript realizing exactly that coverage
    Transcript t;
    t.episode_id = "battery";
    t.env_kind = EnvKind::CivilCourt;
    int index = 0;
    if (single_turn) {
      std::string all;
      for (std::size_t i : chosen) all += actions[i].pattern + ". ";
      t.turns.push_back(spoken(index++, "judge", all));
    } else {
      for (std::size_t i : chosen) {
        t.turns.push_back(spoken(index++, "judge", actions[i].pattern));
        t.turns.push_back(spoken(index++, "plaintiff_lawyer", "acknowledged"));
      }
    }
    auto s = metrics::score_pfs(t, procedure, "judge");
    check.expect(s.value == expected, "case " + std::to_string(case_no) + ": got " +
                                          std::to_string(s.value) + ", expected " +
                                          std::to_string(expected));
  }

  // anchor cases with literal expectations
  {
    Transcript t;
    t.episode_id = "anchor";
    t.env_kind = EnvKind::CivilCourt;
    int index = 0;
    std::vector<std::string> lines;
    for (const auto& a : procedure.stages[0].actions) lines.push_back(a.match_patterns.front());
    lines.push_back(procedure.stages[1].actions[0].match_patterns.front());
    lines.push_back(procedure.stages[1].actions[1].match_patterns.front());
    lines.push_back(procedure.stages[3].actions[0].match_patterns.front());
    for (const auto& l : lines) {
      t.turns.push_back(spoken(index++, "judge", l));
      t.turns.push_back(spoken(index++, "plaintiff_lawyer", "ok"));
    }
    auto s = metrics::score_pfs(t, procedure, "judge");
    check.expect(s.value == 0.55, "anchor (0.5+0.6)/2 case");

    Transcript one;
    one.episode_id = "one-turn";
    one.env_kind = EnvKind::CivilCourt;
    std::string all;
    for (const auto& l : lines) all += l + ". ";
    one.turns.push_back(spoken(0, "judge", all));
    auto s1 = metrics::score_pfs(one, procedure, "judge");
    check.expect(s1.value == 0.0 && s1.uni == 0.0, "single-turn failure rule");
  }
}

// --- criterion 4 -----------------------------------------------------------

void bin_battery(Check& check) {
  // 20 binary topics; the scripted answers and the expected key are fixed
  // by hand below.
  struct Case {
    std::string truth;    // yes / no / conditional
    std::string answer;   // scripted agent reply ("" = topic never raised)
    double expected;
  };
  std::vector<Case> cases = {
      {"yes", "Yes, that is allowed.", 1.0},
      {"yes", "No, that is forbidden.", 0.0},
      {"yes", "It depends on the contract.", 0.5},
      {"yes", "", 0.0},
      {"yes", "The statute is silent here.", 0.0},
      {"no", "No, you cannot.", 1.0},
      {"no", "Yes, certainly.", 0.0},
      {"no", "It depends on the registration date.", 0.5},
      {"no", "", 0.0},
      {"no", "Consult the registry.", 0.0},
      {"conditional", "It depends on the circumstances.", 1.0},
      {"conditional", "Yes, always.", 0.5},
      {"conditional", "No, never.", 0.5},
      {"conditional", "", 0.0},
      {"conditional", "The answer is conditional on the filing.", 1.0},
      {"yes", "Yes. See the code.", 1.0},
      {"no", "The answer is no in every case.", 1.0},
      {"yes", "It depends on whether notice was given.", 0.5},
      {"no", "No.", 1.0},
      {"conditional", "It depends.", 1.0},
  };

  TopicList topics;
  topics.theme = "battery";
  for (std::size_t i = 0; i < cases.size(); ++i)
    topics.topics.push_back({"t" + std::to_string(i + 1), TopicKind::Binary,
                             "Question number " + std::to_string(i + 1) + "?", cases[i].truth,
                             GroundTruthKind::YesNo});

  Transcript transcript;
  transcript.episode_id = "bin-battery";
  transcript.env_kind = EnvKind::KnowledgeQuestioning;
  int index = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (cases[i].answer.empty()) continue;  // topic never addressed
    std::string id = "t" + std::to_string(i + 1);
    transcript.turns.push_back(
        spoken(index++, "public", "[topic:" + id + "] Question number " + std::to_string(i + 1) +
                                      "?"));
    transcript.turns.push_back(spoken(index++, "agent", cases[i].answer));
  }

  HeuristicJudge judge;
  auto scores = metrics::score_bin(transcript, topics, judge);
  check.expect(scores.unavailable.empty(), "no topic should be unavailable");
  for (std::size_t i = 0; i < cases.size(); ++i) {
    std::string id = "t" + std::to_string(i + 1);
    auto it = scores.per_topic.find(id);
    if (it == scores.per_topic.end()) {
      check.expect(false, "missing per-topic value for " + id);
      continue;
    }
    check.expect(it->second == cases[i].expected,
                 id + ": got " + std::to_string(it->second) + ", key says " +
                     std::to_string(cases[i].expected));
  }
}

// --- criterion 5 -----------------------------------------------------------

void golden_run(Check& check) {
  auto configs = corpus::synth_fixtures(7, 2);
  check.expect(configs.size() == 12, "expected 2 episodes x 6 environments");

  auto run_pipeline = [&](const std::string& dir,
                          corpus::CastScripts (*builder)(const EpisodeConfig&)) {
    auto backends = scripted_backends(configs, builder);
    runner::RunnerOptions options;
    options.out_dir = dir;
    runner::run_batch(configs, backends, options, 2, false);
    HeuristicJudge judge;
    std::vector<ScoreCard> cards;
    for (const auto& config : configs) {
      auto transcript = parse_transcript(
          read_text_file(dir + "/" + runner::transcript_rel_path(config)));
      auto card = metrics::evaluate_transcript(config, transcript, judge);
      write_text_file(dir + "/scores/" + config.episode_id + ".score.json",
                      dump_canonical(to_json(card)));
      cards.push_back(std::move(card));
    }
    report::render(report::build_report(cards), "json", dir);
    report::render(report::build_report(cards), "markdown", dir);
    return cards;
  };

  TempDir a("golden_a"), b("golden_b");
  auto cards_a = run_pipeline(a.path.string(), corpus::perfect_cast_scripts);
  auto cards_b = run_pipeline(b.path.string(), corpus::perfect_cast_scripts);

  // byte-identical transcripts, score cards, and reports across runs
  for (const auto& config : configs) {
    auto rel = runner::transcript_rel_path(config);
    check.expect(read_text_file(a.str(rel)) == read_text_file(b.str(rel)),
                 "transcript bytes differ: " + rel);
    auto score_rel = "scores/" + config.episode_id + ".score.json";
    check.expect(read_text_file(a.str(score_rel)) == read_text_file(b.str(score_rel)),
                 "score card bytes differ: " + score_rel);
  }
  check.expect(read_text_file(a.str("report.json")) == read_text_file(b.str("report.json")),
               "report bytes differ");
  check.expect(read_text_file(a.str("report.md")) == read_text_file(b.str("report.md")),
               "markdown report bytes differ");

  // the perfect scripted agent pins the rule-based metrics
  for (const auto& card : cards_a) {
    auto has100 = [&](const std::string& metric) {
      auto it = card.normalized.find(metric);
      return it != card.normalized.end() && std::fabs(it->second - 100.0) < 1e-9;
    };
    switch (card.env_kind) {
      case EnvKind::ComplaintDrafting:
        check.expect(has100("FOR"), card.episode_id + ": FOR != 100");
        check.expect(card.sub_scores.at("DOC.plaintiff") == 1.0 &&
                         card.sub_scores.at("DOC.defendant") == 1.0,
                     card.episode_id + ": exact-match DOC components != 100");
        check.expect(has100("DOC"), card.episode_id + ": DOC != 100");
        break;
      case EnvKind::DefenceDrafting:
        check.expect(has100("FOR"), card.episode_id + ": FOR != 100");
        check.expect(card.sub_scores.at("DOC.defendant") == 1.0,
                     card.episode_id + ": exact-match DOC component != 100");
        break;
      case EnvKind::CivilCourt:
        check.expect(has100("PFS"), card.episode_id + ": PFS != 100");
        check.expect(has100("LAW"), card.episode_id + ": LAW != 100");
        break;
      case EnvKind::CriminalCourt:
        check.expect(has100("PFS"), card.episode_id + ": PFS != 100");
        check.expect(has100("CRI"), card.episode_id + ": CRI != 100");
        check.expect(has100("LAW"), card.episode_id + ": LAW != 100");
        check.expect(card.normalized.at("VER") == 0.0, card.episode_id + ": VER != 0");
        break;
      default:
        check.expect(has100("BIN"), card.episode_id + ": BIN != 100");
        check.expect(has100("NBIN"), card.episode_id + ": NBIN != 100");
        break;
    }
  }

  // a degenerate (stalling) agent floors every metric
  TempDir d("golden_degenerate");
  auto cards_d = run_pipeline(d.path.string(), corpus::degenerate_cast_scripts);
  for (const auto& card : cards_d) {
    for (const auto& [metric, normalized] : card.normalized) {
      if (metric == "VER") {
        check.expect(normalized == 100.0, card.episode_id + ": degenerate VER != 100");
      } else {
        check.expect(normalized == 0.0,
                     card.episode_id + ": degenerate " + metric + " != 0 (" +
                         std::to_string(normalized) + ")");
      }
    }
  }
}

// --- criterion 6 -----------------------------------------------------------

void turn_limits(Check& check) {
  auto configs = corpus::synth_fixtures(13, 1);
  auto backends = scripted_backends(configs, corpus::stalling_cast_scripts);
  std::map<EnvKind, int> expected = {
      {EnvKind::KnowledgeQuestioning, 15}, {EnvKind::LegalConsultation, 10},
      {EnvKind::ComplaintDrafting, 20},    {EnvKind::DefenceDrafting, 15},
      {EnvKind::CivilCourt, 50},           {EnvKind::CriminalCourt, 35}};
  runner::RunnerOptions options;  // in-memory only
  for (const auto& config : configs) {
    auto transcript = runner::run_episode(config, backends, options);
    check.expect(transcript.termination == Termination::MaxTurnsExceeded,
                 to_code(config.env_kind) + ": expected MaxTurnsExceeded");
    check.expect(static_cast<int>(transcript.turns.size()) == expected.at(config.env_kind),
                 to_code(config.env_kind) + ": expected exactly " +
                     std::to_string(expected.at(config.env_kind)) + " turns, got " +
                     std::to_string(transcript.turns.size()));
  }
}

// --- criterion 7 -----------------------------------------------------------

void aggregation(Check& check) {
  Rng rng(7007);
  std::vector<ScoreCard> cards;
  for (int i = 0; i < 60; ++i) {
    EnvKind env = all_env_kinds()[rng.next_below(6)];
    ScoreCard card;
    card.episode_id = "ep" + std::to_string(i);
    card.env_kind = env;
    for (const auto& metric : metrics_for_env(env))
      card.normalized[metric] = static_cast<double>(rng.next_below(10001)) / 100.0;
    cards.push_back(std::move(card));
  }

  auto overall = report::overall_score(report::aggregate(cards));
  check.expect(overall.has_value(), "overall missing");

  // VER perturbation leaves the overall untouched
  auto perturbed = cards;
  for (auto& card : perturbed)
    if (card.normalized.count("VER"))
      card.normalized["VER"] = static_cast<double>(rng.next_below(10001)) / 100.0;
  auto overall2 = report::overall_score(report::aggregate(perturbed));
  check.expect(std::fabs(*overall - *overall2) == 0.0, "overall moved under VER perturbation");

  // independent recomputation
  std::map<std::string, std::map<std::string, std::pair<double, int>>> sums;
  for (const auto& card : cards)
    for (const auto& [metric, value] : card.normalized) {
      if (metric == "VER") continue;
      auto& slot = sums[to_code(card.env_kind)][metric];
      slot.first += value;
      slot.second += 1;
    }
  double total = 0.0;
  int n = 0;
  for (const auto& [env, metric_map] : sums)
    for (const auto& [metric, slot] : metric_map) {
      total += slot.first / slot.second;
      ++n;
    }
  check.expect(std::fabs(*overall - total / n) < 1e-9, "overall differs from recomputation");

  // completion-rate monotonicity over 100 random card sets
  for (EnvKind env : {EnvKind::CivilCourt, EnvKind::CriminalCourt}) {
    const auto& procedure = procedures::default_procedure(env);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<ScoreCard> set;
      int count = 1 + static_cast<int>(rng.next_below(10));
      for (int i = 0; i < count; ++i) {
        ScoreCard card;
        card.episode_id = "c" + std::to_string(i);
        card.env_kind = env;
        for (const auto& stage : procedure.stages)
          card.sub_scores["stage." + stage.stage_id] = rng.next_below(2) ? 1.0 : 0.0;
        set.push_back(std::move(card));
      }
      auto rates = report::completion_rate(set, procedure);
      for (std::size_t s = 1; s < rates.size(); ++s)
        check.expect(rates[s].second <= rates[s - 1].second + 1e-12,
                     "completion rate rose across stages");
    }
  }
}

// --- criterion 8 -----------------------------------------------------------

void personality_statistics(Check& check) {
  PersonalityTraits all_medium;  // default-constructed: every dimension Medium
  const int runs = 10000;
  for (int dim = 0; dim < kTraitDimensions; ++dim) {
    int high = 0, medium = 0, low = 0;
    for (int s = 0; s < runs; ++s) {
      auto out = personality::redistribute_medium(all_medium, static_cast<std::uint64_t>(s));
      switch (get_dimension(out, dim)) {
        case TraitLevel::High: ++high; break;
        case TraitLevel::Medium: ++medium; break;
        case TraitLevel::Low: ++low; break;
      }
    }
    check.expect(std::fabs(high / double(runs) - 0.4) <= 0.02,
                 "dimension " + std::to_string(dim) + " high bucket off 2:1:2");
    check.expect(std::fabs(medium / double(runs) - 0.2) <= 0.02,
                 "dimension " + std::to_string(dim) + " medium bucket off 2:1:2");
    check.expect(std::fabs(low / double(runs) - 0.4) <= 0.02,
                 "dimension " + std::to_string(dim) + " low bucket off 2:1:2");
  }
}

// --- criterion 9 -----------------------------------------------------------

void information_hiding(Check& check) {
  auto configs = corpus::synth_fixtures(7, 3);
  for (const auto& config : configs) {
    std::vector<std::string> truths;
    if (auto* topics = std::get_if<TopicList>(&config.ground_truth)) {
      for (const auto& t : topics->topics)
        if (t.ground_truth.size() >= 8) truths.push_back(t.ground_truth);
    } else if (auto* civ = std::get_if<CivilCaseElements>(&config.ground_truth)) {
      truths = {civ->court_judgment, civ->court_findings};
      truths.insert(truths.end(), civ->applied_laws.begin(), civ->applied_laws.end());
    } else {
      const auto& cr = std::get<CriminalCaseElements>(config.ground_truth);
      truths = {cr.court_findings};
      truths.insert(truths.end(), cr.applied_laws.begin(), cr.applied_laws.end());
    }
    for (const auto& [role_id, profile] : config.participants) {
      std::string dump = to_json(profile.payload).dump();
      for (const char* field :
           {"court_judgment", "court_findings", "applied_laws", "verdict_crime",
            "verdict_sentence_months", "verdict_fine_amount"})
        check.expect(dump.find(field) == std::string::npos,
                     config.episode_id + "/" + role_id + " payload names " + field);
      for (const auto& value : truths) {
        std::string escaped = Json(value).dump();
        escaped = escaped.substr(1, escaped.size() - 2);
        check.expect(dump.find(escaped) == std::string::npos,
                     config.episode_id + "/" + role_id + " payload leaks a ground-truth value");
      }
    }
  }
}

// --- criterion 10 ----------------------------------------------------------

void fuzz_ranges(Check& check) {
  HeuristicJudge judge;
  auto configs = corpus::synth_fixtures(77, 1);
  Rng rng(424242);
  std::vector<std::string> vocabulary = {
      "===DOCUMENT BEGIN===", "===DOCUMENT END===", "===JUDGMENT BEGIN===", "===JUDGMENT END===",
      "CRIME: theft", "CRIME:", "SENTENCE_MONTHS: 11", "SENTENCE_MONTHS: soon", "FINE: -3",
      "FINE: 99999999", "RULING: granted", "REASONING:", "LAWS: a; b; c", "LAWS:",
      "Plaintiff:", "Defendant:", "Claims:", "Case Id:", "Defence Arguments:",
      "Parties and Cause of Action:", "Evidence and Sources, Names and Addresses of Witnesses:",
      "Facts and Legal Grounds:", "[topic:t1]", "[topic:t9]", "yes", "no", "it depends",
      "conditional", "now in session", "verify the identities", "litigation rights",
      "state your claims", "respond to the claims", "present your evidence", "cross-examination",
      "begin the debate", "final statement", "mediation", "announce the judgment",
      "announce the verdict", "read the indictment", "@judge:", "@plaintiff_lawyer:",
      "@nobody:", "total nonsense", "\xE3\x80\x80\xEF\xBC\x9A full width"};

  const int iterations = 10000;
  for (int i = 0; i < iterations; ++i) {
    const auto& config = configs[rng.next_below(configs.size())];
    std::vector<std::string> roles;
    for (const auto& [id, p] : config.participants) roles.push_back(id);

    Transcript t;
    t.episode_id = config.episode_id;
    t.env_kind = config.env_kind;
    int turns = static_cast<int>(rng.next_below(10));
    for (int k = 0; k < turns; ++k) {
      std::string content;
      int words = 1 + static_cast<int>(rng.next_below(8));
      for (int w = 0; w < words; ++w) {
        content += vocabulary[rng.next_below(vocabulary.size())];
        content += rng.next_below(4) ? " " : "\n";
      }
      t.turns.push_back(spoken(k, roles[rng.next_below(roles.size())], content));
    }
    switch (rng.next_below(4)) {
      case 0:
        if (config.env_kind == EnvKind::ComplaintDrafting ||
            config.env_kind == EnvKind::DefenceDrafting) {
          std::string doc;
          int lines = static_cast<int>(rng.next_below(8));
          for (int l = 0; l < lines; ++l) doc += vocabulary[rng.next_below(vocabulary.size())] + "\n";
          t.terminal_artifact = DocumentArtifact{doc};
        }
        break;
      case 1:
        if (config.env_kind == EnvKind::CriminalCourt) {
          StructuredJudgment j;
          j.body = CriminalJudgment{rng.next_below(2) ? "theft" : "",
                                    static_cast<std::int64_t>(rng.next_below(2000)),
                                    static_cast<std::int64_t>(rng.next_below(1000000)),
                                    "r",
                                    {"Criminal Law Article 264"}};
          j.unparseable = rng.next_below(3) == 0;
          t.terminal_artifact = j;
        } else if (config.env_kind == EnvKind::CivilCourt) {
          StructuredJudgment j;
          j.body = CivilJudgment{"ruling", "reasoning", {"Civil Code Article 667"}};
          t.terminal_artifact = j;
        }
        break;
      default: break;
    }
    t.termination = rng.next_below(2) ? Termination::Completed : Termination::MaxTurnsExceeded;

    auto card = metrics::evaluate_transcript(config, t, judge);
    auto violations = validate_score_card(card);
    if (!violations.empty()) {
      check.expect(false, "iteration " + std::to_string(i) + ": " + violations.front());
      return;
    }
  }
}

}  // namespace

int main() {
  run_criterion(1, "verdict log-deviation formula to 1e-12 over 1000 pairs", 1.0,
                verdict_formula);
  run_criterion(2, "format score equals the subset/order oracle on all 326 documents", 5.0,
                format_oracle);
  run_criterion(3, "procedural score equals hand-computed (STA+ACT)/2 on a 30-case battery", 1.0,
                pfs_battery);
  run_criterion(4, "binary accuracy reproduces the 20-topic hand key exactly", 0.0, bin_battery);
  run_criterion(5, "golden end-to-end run: byte-identical and pinned extremes", 30.0, golden_run);
  run_criterion(6, "turn limits enforce 15/10/20/15/50/35 exactly", 0.0, turn_limits);
  run_criterion(7, "aggregation excludes VER and completion rates stay monotone", 0.0,
                aggregation);
  run_criterion(8, "medium redistribution hits 2:1:2 within 0.02 per bucket", 0.0,
                personality_statistics);
  run_criterion(9, "ground truth never reaches a participant payload", 0.0, information_hiding);
  run_criterion(10, "10000 fuzzed transcripts stay in bounds without crashing", 0.0, fuzz_ranges);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all acceptance criteria passed\n");
  return 0;
}
