#include "legalsim/backend.hpp"

#include <httplib.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <regex>
#include <thread>

namespace legalsim {

namespace {
using nlohmann::json;

std::int64_t now_us() {
  return std::chrono::duration_cast<std::chrono::microseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}
}  // namespace

std::string to_code(ChatRole r) {
  switch (r) {
    case ChatRole::System: return "system";
    case ChatRole::User: return "user";
    case ChatRole::Assistant: return "assistant";
  }
  return "user";
}

std::optional<ChatRole> chat_role_from_code(std::string_view code) {
  if (code == "system") return ChatRole::System;
  if (code == "user") return ChatRole::User;
  if (code == "assistant") return ChatRole::Assistant;
  return std::nullopt;
}

std::vector<std::string> BackendConfig::validate() const {
  std::vector<std::string> v;
  if (base_url.empty()) v.push_back("base_url must be non-empty");
  if (model_name.empty()) v.push_back("model_name must be non-empty");
  if (timeout_s <= 0) v.push_back("timeout_s must be positive");
  if (max_retries < 0 || max_retries > 10) v.push_back("max_retries must be in [0,10]");
  if (rate_limit_rps && *rate_limit_rps <= 0) v.push_back("rate_limit_rps must be positive");
  return v;
}

RateLimiter::RateLimiter(std::optional<double> rps) : rps_(rps), last_refill_us_(now_us()) {}

void RateLimiter::acquire() {
  if (!rps_) return;
  while (true) {
    {
      std::lock_guard lock(mu_);
      std::int64_t now = now_us();
      tokens_ += static_cast<double>(now - last_refill_us_) * (*rps_ / 1e6);
      // burst cap of one second, but always at least one whole token so
      // sub-1 rps settings still make progress
      double cap = std::max(*rps_, 1.0);
      if (tokens_ > cap) tokens_ = cap;
      last_refill_us_ = now;
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
}

HttpChatBackend::HttpChatBackend(BackendConfig config)
    : config_(std::move(config)),
      limiter_(std::make_shared<RateLimiter>(config_.rate_limit_rps)) {
  auto violations = config_.validate();
  if (!violations.empty()) throw std::invalid_argument("backend config: " + violations.front());
}

std::string HttpChatBackend::chat(const std::vector<ChatMessage>& messages) {
  if (messages.empty()) throw std::invalid_argument("chat requires at least one message");
  if (messages.front().role != ChatRole::System)
    throw std::invalid_argument("first chat message must be a system message");
  for (const auto& m : messages)
    if (m.content.empty() && m.role != ChatRole::Assistant)
      throw std::invalid_argument("only assistant placeholder messages may be empty");

  json body;
  body["model"] = config_.model_name;
  body["temperature"] = config_.temperature;
  auto& msgs = body["messages"] = json::array();
  for (const auto& m : messages) msgs.push_back({{"role", to_code(m.role)}, {"content", m.content}});
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!config_.api_key_env_var.empty()) {
    if (const char* key = std::getenv(config_.api_key_env_var.c_str()); key && *key)
      headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  std::vector<std::string> attempts;
  const int total_attempts = config_.max_retries + 1;
  for (int attempt = 0; attempt < total_attempts; ++attempt) {
    if (attempt > 0) {
      int delay = config_.retry_initial_delay_ms;
      for (int i = 1; i < attempt; ++i) delay *= 2;
      if (delay > 5000) delay = 5000;
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
    }
    limiter_->acquire();

    httplib::Client client(config_.base_url);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_s));

    auto res = client.Post("/chat/completions", headers, payload, "application/json");
    if (!res) {
      attempts.push_back("attempt " + std::to_string(attempt + 1) + ": transport error " +
                         httplib::to_string(res.error()));
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      attempts.push_back("attempt " + std::to_string(attempt + 1) + ": HTTP " +
                         std::to_string(res->status));
      continue;
    }
    if (res->status != 200) {
      // Non-retriable client error.
      throw BackendError("chat endpoint returned HTTP " + std::to_string(res->status),
                         std::move(attempts));
    }
    auto parsed = json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty() ||
        !parsed["choices"][0].contains("message") ||
        !parsed["choices"][0]["message"].contains("content") ||
        !parsed["choices"][0]["message"]["content"].is_string()) {
      throw BackendError("malformed chat response body", std::move(attempts));
    }
    return parsed["choices"][0]["message"]["content"].get<std::string>();
  }
  throw BackendError("chat failed after " + std::to_string(total_attempts) + " attempts",
                     std::move(attempts));
}

ScriptedBackend::ScriptedBackend(std::vector<ScriptEntry> script, std::string default_response)
    : script_(std::move(script)),
      consumed_(script_.size(), false),
      default_response_(std::move(default_response)) {}

std::string ScriptedBackend::chat(const std::vector<ChatMessage>& messages) {
  const std::string& latest = messages.empty() ? std::string{} : messages.back().content;
  for (std::size_t i = 0; i < script_.size(); ++i) {
    if (consumed_[i]) continue;
    std::regex re(script_[i].trigger, std::regex::ECMAScript);
    if (std::regex_search(latest, re)) {
      consumed_[i] = true;
      return script_[i].response;
    }
  }
  return default_response_;
}

std::string EchoBackend::chat(const std::vector<ChatMessage>& messages) {
  return messages.empty() ? std::string{} : messages.back().content;
}

}  // namespace legalsim
