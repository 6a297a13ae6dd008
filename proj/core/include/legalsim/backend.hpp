#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace legalsim {

enum class ChatRole { System, User, Assistant };

struct ChatMessage {
  ChatRole role = ChatRole::User;
  std::string content;
};

std::string to_code(ChatRole r);
std::optional<ChatRole> chat_role_from_code(std::string_view code);

struct BackendConfig {
  std::string base_url;              // e.g. http://127.0.0.1:8089
  std::string model_name;
  std::string api_key_env_var;       // name of the env var holding the bearer token
  double timeout_s = 30.0;
  int max_retries = 3;               // <= 10
  double temperature = 0.0;          // greedy by default
  std::optional<double> rate_limit_rps;
  int retry_initial_delay_ms = 200;  // doubles per attempt, capped at 5s

  std::vector<std::string> validate() const;
};

// Transport or protocol failure after retries were exhausted. Carries the
// per-attempt log for diagnostics.
class BackendError : public std::runtime_error {
 public:
  BackendError(const std::string& what, std::vector<std::string> attempts = {})
      : std::runtime_error(what), attempts_(std::move(attempts)) {}
  const std::vector<std::string>& attempts() const { return attempts_; }

 private:
  std::vector<std::string> attempts_;
};

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // Returns the assistant's reply or throws BackendError. Never returns on
  // transport failure without either success or an exception.
  virtual std::string chat(const std::vector<ChatMessage>& messages) = 0;
};

using ChatBackendPtr = std::shared_ptr<ChatBackend>;

// Shared token bucket. Episodes run sequentially inside themselves, but
// many episodes may share one backend.
class RateLimiter {
 public:
  explicit RateLimiter(std::optional<double> rps);
  void acquire();  // blocks until a token is available; no-op when unlimited

 private:
  std::mutex mu_;
  std::optional<double> rps_;
  double tokens_ = 1.0;
  std::int64_t last_refill_us_ = 0;
};

// Remote chat-completions client (messages array in, single choice out).
// Retries transient failures (429, 5xx, transport errors) with exponential
// backoff up to max_retries.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(BackendConfig config);
  std::string chat(const std::vector<ChatMessage>& messages) override;

  const BackendConfig& config() const { return config_; }

 private:
  BackendConfig config_;
  std::shared_ptr<RateLimiter> limiter_;
};

struct ScriptEntry {
  std::string trigger;  // ECMAScript regex, searched in the latest message
  std::string response;
};

// Deterministic test double. Consumes the first unconsumed entry whose
// trigger matches the latest incoming message; yields the default response
// when nothing matches.
class ScriptedBackend : public ChatBackend {
 public:
  ScriptedBackend(std::vector<ScriptEntry> script, std::string default_response);
  std::string chat(const std::vector<ChatMessage>& messages) override;

 private:
  std::vector<ScriptEntry> script_;
  std::vector<bool> consumed_;
  std::string default_response_;
};

// Echo double: replies with the latest message's content.
class EchoBackend : public ChatBackend {
 public:
  std::string chat(const std::vector<ChatMessage>& messages) override;
};

}  // namespace legalsim
