#include "legalsim/runner.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "legalsim/json_io.hpp"
#include "legalsim/rng.hpp"

namespace legalsim::runner {

namespace fs = std::filesystem;

std::string transcript_rel_path(const EpisodeConfig& config) {
  return to_code(config.env_kind) + "/" + config.episode_id + ".json";
}

std::string turns_rel_path(const EpisodeConfig& config) {
  return to_code(config.env_kind) + "/" + config.episode_id + ".turns.jsonl";
}

std::string config_rel_path(const EpisodeConfig& config) {
  return "configs/" + config.episode_id + ".json";
}

std::uint64_t config_hash(const EpisodeConfig& config) {
  return fnv1a(to_json(config).dump());
}

namespace {

void persist_transcript(const Transcript& transcript, const EpisodeConfig& config,
                        const RunnerOptions& options) {
  if (options.out_dir.empty()) return;
  write_text_file(options.out_dir + "/" + transcript_rel_path(config),
                  dump_canonical(to_json(transcript)));
}

class TurnStream {
 public:
  TurnStream(const EpisodeConfig& config, const RunnerOptions& options) {
    if (options.out_dir.empty()) return;
    fs::path path = fs::path(options.out_dir) / turns_rel_path(config);
    fs::create_directories(path.parent_path());
    out_.open(path, std::ios::binary | std::ios::trunc);
  }

  void append(const Turn& turn) {
    if (!out_.is_open()) return;
    out_ << to_json(turn).dump() << "\n";
    out_.flush();  // tail-following
  }

 private:
  std::ofstream out_;
};

}  // namespace

Transcript run_episode(const EpisodeConfig& config, const BackendSet& backends,
                       const RunnerOptions& options) {
  envs::Environment env(config, backends.judge.get(),
                        envs::EnvOptions{options.history_window, std::nullopt});

  Transcript transcript;
  transcript.episode_id = config.episode_id;
  transcript.env_kind = config.env_kind;

  // Per-role backends, instantiated once per episode.
  std::map<std::string, ChatBackendPtr> role_backends;
  for (const auto& [role_id, profile] : config.participants) {
    const auto& factory =
        is_agent_under_test(profile.role_kind) ? backends.agent : backends.environment;
    if (!factory) throw std::invalid_argument("missing backend factory for role " + role_id);
    role_backends[role_id] = factory(config, role_id);
  }

  auto stamp = [&](int index) -> std::int64_t {
    return options.clock ? options.clock(index) : static_cast<std::int64_t>(index);
  };

  TurnStream stream(config, options);
  std::string speaker = env.initiator();
  while (true) {
    if (env.state().turn_count >= config.max_turns) {
      transcript.termination = Termination::MaxTurnsExceeded;
      break;
    }
    std::string content;
    try {
      content = role_backends.at(speaker)->chat(env.assemble_prompt(speaker, transcript.turns));
    } catch (const BackendError&) {
      transcript.termination = Termination::BackendError;
      break;
    }
    Turn turn;
    turn.index = static_cast<int>(transcript.turns.size());
    turn.speaker = speaker;
    turn.addressee = env.addressee_for(speaker, content);
    turn.content = std::move(content);
    turn.timestamp_ms = stamp(turn.index);
    transcript.turns.push_back(std::move(turn));
    env.observe(transcript.turns.back());
    stream.append(transcript.turns.back());

    if (auto reason = env.is_terminated()) {
      transcript.termination = *reason;
      break;
    }
    speaker = env.route_next(transcript.turns.back());
  }

  transcript.terminal_artifact = env.artifact();
  persist_transcript(transcript, config, options);
  return transcript;
}

namespace {

struct Manifest {
  Json root;

  static Manifest load_or_create(const std::string& out_dir) {
    Manifest m;
    fs::path path = fs::path(out_dir) / "manifest.json";
    if (fs::exists(path)) {
      m.root = parse_json(read_text_file(path.string()));
    } else {
      m.root = Json{{"schema_version", kSchemaVersion}, {"episodes", Json::object()}};
    }
    if (!m.root.contains("episodes") || !m.root["episodes"].is_object())
      m.root["episodes"] = Json::object();
    return m;
  }

  bool matches(const EpisodeConfig& config) const {
    const auto& eps = root["episodes"];
    auto it = eps.find(config.episode_id);
    if (it == eps.end()) return false;
    return it->value("config_hash", std::string{}) == std::to_string(config_hash(config));
  }

  void record(const EpisodeConfig& config, Termination termination) {
    root["episodes"][config.episode_id] =
        Json{{"env_kind", to_code(config.env_kind)},
             {"config_hash", std::to_string(config_hash(config))},
             {"transcript", transcript_rel_path(config)},
             {"termination", to_code(termination)}};
  }

  void save(const std::string& out_dir) {
    // keep episode entries sorted for stable bytes
    Json sorted = Json::object();
    std::map<std::string, Json> entries;
    for (auto it = root["episodes"].begin(); it != root["episodes"].end(); ++it)
      entries[it.key()] = it.value();
    for (auto& [k, v] : entries) sorted[k] = std::move(v);
    root["episodes"] = std::move(sorted);
    write_text_file(out_dir + "/manifest.json", dump_canonical(root));
  }
};

std::optional<Termination> completed_on_disk(const EpisodeConfig& config,
                                             const RunnerOptions& options) {
  fs::path path = fs::path(options.out_dir) / transcript_rel_path(config);
  if (!fs::exists(path)) return std::nullopt;
  try {
    auto transcript = parse_transcript(read_text_file(path.string()));
    return transcript.termination;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable transcript: rerun
  }
}

}  // namespace

BatchSummary run_batch(const std::vector<EpisodeConfig>& configs, const BackendSet& backends,
                       const RunnerOptions& options, int parallelism, bool resume,
                       std::function<void(const std::string&, const std::string&)> progress) {
  if (options.out_dir.empty()) throw std::invalid_argument("run_batch requires an output dir");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be positive");
  fs::create_directories(options.out_dir);

  BatchSummary summary;
  std::mutex mu;  // guards summary, manifest, progress
  Manifest manifest = Manifest::load_or_create(options.out_dir);

  std::vector<const EpisodeConfig*> work;
  for (const auto& config : configs) {
    if (resume && manifest.matches(config)) {
      auto done = completed_on_disk(config, options);
      if (done && *done == Termination::Completed) {
        ++summary.skipped;
        if (progress) progress(config.episode_id, "skipped");
        continue;
      }
    }
    work.push_back(&config);
    if (options.persist_configs)
      write_text_file(options.out_dir + "/" + config_rel_path(config),
                      dump_canonical(to_json(config)));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      const EpisodeConfig& config = *work[i];
      try {
        Transcript t = run_episode(config, backends, options);
        std::lock_guard lock(mu);
        switch (t.termination) {
          case Termination::Completed: ++summary.completed; break;
          case Termination::MaxTurnsExceeded: ++summary.max_turns_exceeded; break;
          case Termination::BackendError: ++summary.backend_errors; break;
        }
        manifest.record(config, t.termination);
        if (progress) progress(config.episode_id, to_code(t.termination));
      } catch (const std::exception& e) {
        std::lock_guard lock(mu);
        ++summary.backend_errors;
        summary.failures[config.episode_id] = e.what();
        if (progress) progress(config.episode_id, std::string("failed: ") + e.what());
      }
    }
  };

  std::vector<std::thread> threads;
  int n = std::min<int>(parallelism, static_cast<int>(work.size()));
  for (int i = 0; i < n; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  manifest.save(options.out_dir);
  return summary;
}

}  // namespace legalsim::runner
