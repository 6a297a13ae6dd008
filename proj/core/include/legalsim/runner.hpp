#pragma once

#include <functional>
#include <map>
#include <string>

#include "legalsim/backend.hpp"
#include "legalsim/domain.hpp"
#include "legalsim/envs.hpp"
#include "legalsim/judge.hpp"

namespace legalsim::runner {

// Builds the backend serving one role of one episode. Stateful backends
// (scripts) get a fresh instance per episode; shared HTTP clients may
// return the same pointer every time.
using BackendFactory =
    std::function<ChatBackendPtr(const EpisodeConfig& config, const std::string& role_id)>;

struct BackendSet {
  BackendFactory agent;        // drives the agent under test
  BackendFactory environment;  // drives every other participant
  std::shared_ptr<JudgeBackend> judge;
};

inline BackendFactory shared_backend(ChatBackendPtr backend) {
  return [backend](const EpisodeConfig&, const std::string&) { return backend; };
}

struct RunnerOptions {
  std::string out_dir;             // transcripts land in <out_dir>/<env code>/
  std::size_t history_window = 0;  // 0 = full history in prompts
  // Turn timestamps. The default is a deterministic per-turn counter so
  // reruns of scripted episodes are byte-identical; pass a wall clock for
  // live runs.
  std::function<std::int64_t(int turn_index)> clock;
  bool persist_configs = true;  // copy each episode config into the run dir
};

// Relative locations inside a run directory.
std::string transcript_rel_path(const EpisodeConfig& config);
std::string turns_rel_path(const EpisodeConfig& config);
std::string config_rel_path(const EpisodeConfig& config);

// Drives one episode to termination: open, route, prompt, chat, record,
// update, repeat. The transcript (and its JSONL turn stream) is persisted
// before returning on every termination path, including backend errors.
Transcript run_episode(const EpisodeConfig& config, const BackendSet& backends,
                       const RunnerOptions& options);

struct BatchSummary {
  int completed = 0;
  int max_turns_exceeded = 0;
  int backend_errors = 0;
  int skipped = 0;  // resume hits
  std::map<std::string, std::string> failures;  // episode_id -> error

  int executed() const { return completed + max_turns_exceeded + backend_errors; }
};

// Runs episodes with bounded parallelism. With resume, episodes whose
// persisted transcript is Completed (and whose config hash matches the
// manifest) are skipped. Per-episode failures never abort the batch.
BatchSummary run_batch(const std::vector<EpisodeConfig>& configs, const BackendSet& backends,
                       const RunnerOptions& options, int parallelism, bool resume,
                       std::function<void(const std::string&, const std::string&)> progress = {});

std::uint64_t config_hash(const EpisodeConfig& config);

}  // namespace legalsim::runner
