// legalsim CLI: build episode configs, run episodes, score transcripts,
// aggregate reports, and serve the mock chat endpoint.

#include <CLI11.hpp>

#include <csignal>
#include <filesystem>
#include <iostream>
#include <thread>

#include "legalsim/corpus.hpp"
#include "legalsim/json_io.hpp"
#include "legalsim/metrics.hpp"
#include "legalsim/mock_server.hpp"
#include "legalsim/report.hpp"
#include "legalsim/runner.hpp"

namespace fs = std::filesystem;
using namespace legalsim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

struct BackendSpec {
  std::string type;  // http | scripted | echo | heuristic | llm
  BackendConfig http;
  std::string scripts_path;
};

BackendSpec load_backend_spec(const std::string& path) {
  auto j = parse_json(read_text_file(path));
  JsonReader r(j);
  BackendSpec spec;
  spec.type = r.string_field("type");
  if (spec.type == "http" || spec.type == "llm") {
    spec.http.base_url = r.string_field("base_url");
    spec.http.model_name = r.string_field("model_name");
    spec.http.api_key_env_var = r.string_field_or("api_key_env_var", "");
    if (r.has("timeout_s")) spec.http.timeout_s = r.at("timeout_s").get_double();
    spec.http.max_retries = static_cast<int>(r.int_field_or("max_retries", 3));
    if (r.has("temperature")) spec.http.temperature = r.at("temperature").get_double();
    if (r.has("rate_limit_rps")) spec.http.rate_limit_rps = r.at("rate_limit_rps").get_double();
    spec.http.retry_initial_delay_ms =
        static_cast<int>(r.int_field_or("retry_initial_delay_ms", 200));
    auto violations = spec.http.validate();
    if (!violations.empty()) r.fail(violations.front());
  } else if (spec.type == "scripted") {
    spec.scripts_path = r.string_field("scripts");
  } else if (spec.type != "echo" && spec.type != "heuristic") {
    r.at("type").fail("unknown backend type '" + spec.type + "'");
  }
  return spec;
}

runner::BackendFactory make_chat_factory(const BackendSpec& spec) {
  if (spec.type == "http") {
    auto shared = std::make_shared<HttpChatBackend>(spec.http);
    return runner::shared_backend(shared);
  }
  if (spec.type == "scripted") {
    auto library = std::make_shared<corpus::ScriptLibrary>(
        corpus::ScriptLibrary::from_file(spec.scripts_path));
    return [library](const EpisodeConfig& config, const std::string& role_id) {
      return library->make_backend(config, role_id);
    };
  }
  if (spec.type == "echo") return runner::shared_backend(std::make_shared<EchoBackend>());
  throw std::invalid_argument("backend type '" + spec.type + "' cannot drive chat roles");
}

std::shared_ptr<JudgeBackend> make_judge(const BackendSpec& spec) {
  if (spec.type == "heuristic") return std::make_shared<HeuristicJudge>();
  if (spec.type == "llm" || spec.type == "http")
    return std::make_shared<LlmJudge>(std::make_shared<HttpChatBackend>(spec.http));
  throw std::invalid_argument("backend type '" + spec.type + "' cannot act as judge");
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& extension) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) return files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().string().ends_with(extension))
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<EpisodeConfig> load_configs(const std::string& dir) {
  fs::path root(dir);
  if (fs::exists(root / "configs")) root /= "configs";
  std::vector<EpisodeConfig> configs;
  for (const auto& file : sorted_files(root, ".json"))
    configs.push_back(parse_episode_config(read_text_file(file.string())));
  return configs;
}

void emit(bool json_mode, const Json& summary, const std::string& human) {
  if (json_mode)
    std::cout << summary.dump(2) << "\n";
  else
    std::cout << human;
}

// ---------------------------------------------------------------------------

int cmd_build(const std::string& input, bool fixtures, std::vector<std::string> env_kinds,
              std::uint64_t seed, int count, const std::string& out, bool extract,
              const std::string& backend_cfg, bool json_mode) {
  std::set<EnvKind> wanted;
  if (env_kinds.empty()) {
    for (EnvKind k : all_env_kinds()) wanted.insert(k);
  } else {
    for (const auto& code : env_kinds) {
      auto k = env_kind_from_code(code);
      if (!k) {
        std::cerr << "unknown env kind '" << code << "'\n";
        return kExitUsage;
      }
      wanted.insert(*k);
    }
  }

  std::vector<EpisodeConfig> configs;
  std::map<std::string, std::string> rejects;

  if (fixtures) {
    std::map<EnvKind, int> counts;
    for (EnvKind k : wanted) counts[k] = count;
    configs = corpus::synth_fixtures(seed, counts);
  } else {
    if (input.empty() || !fs::exists(input)) {
      std::cerr << "input directory not readable: '" << input << "'\n";
      return kExitUsage;
    }
    corpus::LoadReport report;
    if (extract) {
      if (backend_cfg.empty()) {
        std::cerr << "--extract requires --backend\n";
        return kExitUsage;
      }
      auto factory = make_chat_factory(load_backend_spec(backend_cfg));
      EpisodeConfig dummy;
      auto backend = factory(dummy, "extractor");
      for (const auto& file : sorted_files(input, ".txt")) {
        std::string name = file.filename().string();
        corpus::RawDocKind kind = corpus::RawDocKind::LegalArticle;
        if (name.find("civil") != std::string::npos)
          kind = corpus::RawDocKind::CivilJudgmentDocument;
        else if (name.find("criminal") != std::string::npos)
          kind = corpus::RawDocKind::CriminalJudgmentDocument;
        auto result = corpus::extract_elements(read_text_file(file.string()), kind, *backend);
        if (result.record)
          report.records.push_back(std::move(*result.record));
        else
          report.rejects[name] = result.error;
      }
      auto loaded = corpus::load_elements(input);
      for (auto& rec : loaded.records) report.records.push_back(std::move(rec));
      for (auto& [f, why] : loaded.rejects) report.rejects[f] = why;
    } else {
      report = corpus::load_elements(input);
    }
    rejects = report.rejects;
    std::uint64_t n = 0;
    for (const auto& record : report.records) {
      for (EnvKind env : wanted) {
        bool is_topics = std::holds_alternative<TopicList>(record);
        bool is_criminal = std::holds_alternative<CriminalCaseElements>(record);
        bool level1 =
            env == EnvKind::KnowledgeQuestioning || env == EnvKind::LegalConsultation;
        if (level1 != is_topics) continue;
        if ((env == EnvKind::CriminalCourt) != is_criminal) continue;
        configs.push_back(corpus::build_episode(record, env, seed + n));
        ++n;
      }
    }
  }

  for (const auto& config : configs)
    write_text_file(out + "/configs/" + config.episode_id + ".json",
                    dump_canonical(to_json(config)));
  if (fixtures) {
    write_text_file(out + "/scripts/perfect.json",
                    corpus::library_for(configs, corpus::perfect_cast_scripts).to_json_text());
    write_text_file(out + "/scripts/degenerate.json",
                    corpus::library_for(configs, corpus::degenerate_cast_scripts).to_json_text());
    write_text_file(out + "/scripts/stalling.json",
                    corpus::library_for(configs, corpus::stalling_cast_scripts).to_json_text());
  }
  if (!rejects.empty()) {
    Json r = Json::object();
    for (const auto& [f, why] : rejects) r[f] = why;
    write_text_file(out + "/rejects.json", dump_canonical(r));
  }

  Json summary{{"configs_built", configs.size()}, {"rejects", rejects.size()}, {"out", out}};
  emit(json_mode, summary,
       "built " + std::to_string(configs.size()) + " configs (" + std::to_string(rejects.size()) +
           " rejects) under " + out + "\n");
  return configs.empty() ? kExitUsage : kExitOk;
}

int cmd_run(const std::string& configs_dir, const std::string& agent_cfg,
            const std::string& env_cfg, const std::string& judge_cfg, int parallel, bool resume,
            const std::string& out, bool json_mode) {
  runner::BackendSet backends;
  try {
    backends.agent = make_chat_factory(load_backend_spec(agent_cfg));
    backends.environment = make_chat_factory(load_backend_spec(env_cfg));
    backends.judge = make_judge(load_backend_spec(judge_cfg));
  } catch (const std::exception& e) {
    std::cerr << "backend config error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<EpisodeConfig> configs;
  try {
    configs = load_configs(configs_dir);
  } catch (const std::exception& e) {
    std::cerr << "config load error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (configs.empty()) {
    std::cerr << "no episode configs under '" << configs_dir << "'\n";
    return kExitUsage;
  }

  runner::RunnerOptions options;
  options.out_dir = out;
  auto progress = [&](const std::string& id, const std::string& status) {
    if (!json_mode) std::cout << id << ": " << status << "\n";
  };
  auto summary = runner::run_batch(configs, backends, options, parallel, resume, progress);

  Json j{{"completed", summary.completed},
         {"max_turns_exceeded", summary.max_turns_exceeded},
         {"backend_errors", summary.backend_errors},
         {"skipped", summary.skipped}};
  emit(json_mode, j,
       "completed " + std::to_string(summary.completed) + ", max-turns " +
           std::to_string(summary.max_turns_exceeded) + ", backend-errors " +
           std::to_string(summary.backend_errors) + ", skipped " +
           std::to_string(summary.skipped) + "\n");
  return summary.backend_errors == 0 ? kExitOk : kExitPartial;
}

int cmd_eval(const std::string& runs_dir, const std::string& judge_cfg, const std::string& out,
             bool json_mode) {
  std::shared_ptr<JudgeBackend> judge;
  try {
    judge = make_judge(load_backend_spec(judge_cfg));
  } catch (const std::exception& e) {
    std::cerr << "judge config error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::vector<EpisodeConfig> configs;
  try {
    configs = load_configs(runs_dir);
  } catch (const std::exception& e) {
    std::cerr << "config load error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (configs.empty()) {
    std::cerr << "no episode configs recorded under '" << runs_dir << "'\n";
    return kExitUsage;
  }

  int evaluated = 0;
  Json manifest_entries = Json::object();
  for (const auto& config : configs) {
    fs::path tpath = fs::path(runs_dir) / runner::transcript_rel_path(config);
    if (!fs::exists(tpath)) {
      std::cerr << "missing transcript: " << tpath.string() << "\n";
      return kExitUsage;
    }
    auto transcript = parse_transcript(read_text_file(tpath.string()));
    auto card = metrics::evaluate_transcript(config, transcript, *judge);
    write_text_file(out + "/" + to_code(config.env_kind) + "/" + config.episode_id +
                        ".score.json",
                    dump_canonical(to_json(card)));
    Json unavailable = Json::object();
    for (const auto& [metric, why] : card.unavailable) unavailable[metric] = why;
    Json available = Json::array();
    for (const auto& [metric, value] : card.metrics) available.push_back(metric);
    manifest_entries[config.episode_id] =
        Json{{"env_kind", to_code(config.env_kind)},
             {"available", std::move(available)},
             {"unavailable", std::move(unavailable)}};
    ++evaluated;
  }
  write_text_file(out + "/manifest.json",
                  dump_canonical(Json{{"schema_version", kSchemaVersion},
                                      {"episodes", std::move(manifest_entries)}}));

  Json j{{"evaluated", evaluated}, {"out", out}};
  emit(json_mode, j, "evaluated " + std::to_string(evaluated) + " transcripts into " + out + "\n");
  return kExitOk;
}

int cmd_report(const std::string& scores_dir, const std::string& format, const std::string& out,
               bool json_mode) {
  std::vector<ScoreCard> cards;
  for (const auto& file : sorted_files(scores_dir, ".score.json"))
    cards.push_back(parse_score_card(read_text_file(file.string())));
  if (cards.empty()) {
    std::cerr << "no score cards under '" << scores_dir << "'\n";
    return kExitUsage;
  }
  auto rep = report::build_report(cards);
  std::string out_dir = out.empty() ? scores_dir : out;
  if (format == "all") {
    report::render(rep, "markdown", out_dir);
    report::render(rep, "csv", out_dir);
    report::render(rep, "json", out_dir);
  } else {
    report::render(rep, format, out_dir);
  }
  Json j{{"cards", cards.size()}, {"out", out_dir}};
  if (rep.overall) j["overall_excluding_ver"] = *rep.overall;
  emit(json_mode, j,
       "report over " + std::to_string(cards.size()) + " cards written to " + out_dir + "\n");
  return kExitOk;
}

int cmd_mock_server(int port, const std::string& fixtures_path, bool json_mode) {
  MockFixtures fixtures;
  if (!fixtures_path.empty()) {
    try {
      fixtures = MockFixtures::from_file(fixtures_path);
    } catch (const std::exception& e) {
      std::cerr << "fixtures error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  MockChatServer server(fixtures);
  if (!server.start(port)) {
    std::cerr << "cannot bind port " << port << "\n";
    return kExitUsage;
  }
  emit(json_mode, Json{{"listening", server.base_url()}},
       "mock chat server listening on " + server.base_url() + "\n");
  std::cout.flush();
  // Serve until killed.
  while (true) std::this_thread::sleep_for(std::chrono::seconds(3600));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-agent legal scenario simulator and evaluation harness"};
  app.require_subcommand(1);
  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable summaries on stdout");

  // build
  auto* build = app.add_subcommand("build", "build episode configs from elements or fixtures");
  std::string input, out = "build_out", backend_cfg;
  std::vector<std::string> env_kinds;
  std::uint64_t seed = 7;
  int count = 2;
  bool fixtures = false, extract = false;
  build->add_option("--input", input, "directory of element JSON (or raw .txt with --extract)");
  build->add_option("--env-kinds", env_kinds, "env kinds (KQ LC CD DD CI CR)")->delimiter(',');
  build->add_option("--seed", seed, "deterministic build seed");
  build->add_option("--out", out, "output directory")->required();
  build->add_flag("--fixtures", fixtures, "generate synthetic fixtures instead of reading input");
  build->add_option("--count", count, "fixtures per environment");
  build->add_flag("--extract", extract, "extract elements from raw documents via a backend");
  build->add_option("--backend", backend_cfg, "backend config for --extract");

  // run
  auto* run = app.add_subcommand("run", "run a batch of episodes");
  std::string configs_dir, agent_cfg, env_cfg, judge_cfg, run_out = "runs/batch";
  int parallel = 1;
  bool resume = false;
  run->add_option("--configs", configs_dir, "episode config directory")->required();
  run->add_option("--agent", agent_cfg, "agent-under-test backend config")->required();
  run->add_option("--env-driver", env_cfg, "environment-driver backend config")->required();
  run->add_option("--judge", judge_cfg, "judge backend config")->required();
  run->add_option("--parallel", parallel, "episodes in flight");
  run->add_flag("--resume", resume, "skip episodes already completed");
  run->add_option("--out", run_out, "run directory")->required();

  // eval
  auto* eval = app.add_subcommand("eval", "score persisted transcripts");
  std::string runs_dir, eval_judge, eval_out;
  eval->add_option("--runs", runs_dir, "run directory")->required();
  eval->add_option("--judge", eval_judge, "judge backend config")->required();
  eval->add_option("--out", eval_out, "score card directory")->required();

  // report
  auto* rep = app.add_subcommand("report", "aggregate score cards into tables");
  std::string scores_dir, format = "markdown", report_out;
  rep->add_option("--scores", scores_dir, "score card directory")->required();
  rep->add_option("--format", format, "markdown | csv | json | all");
  rep->add_option("--out", report_out, "output directory (defaults to --scores)");

  // mock-server
  auto* mock = app.add_subcommand("mock-server", "serve the chat protocol from fixtures");
  int port = 8089;
  std::string fixtures_path;
  mock->add_option("--port", port, "listen port");
  mock->add_option("--fixtures", fixtures_path, "fixtures JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build)
      return cmd_build(input, fixtures, env_kinds, seed, count, out, extract, backend_cfg,
                       json_mode);
    if (*run)
      return cmd_run(configs_dir, agent_cfg, env_cfg, judge_cfg, parallel, resume, run_out,
                     json_mode);
    if (*eval) return cmd_eval(runs_dir, eval_judge, eval_out, json_mode);
    if (*rep) return cmd_report(scores_dir, format, report_out, json_mode);
    if (*mock) return cmd_mock_server(port, fixtures_path, json_mode);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
