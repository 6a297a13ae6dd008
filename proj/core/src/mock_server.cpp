#include "legalsim/mock_server.hpp"

#include <httplib.h>

#include <atomic>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "legalsim/json_io.hpp"

namespace legalsim {

using nlohmann::json;

MockFixtures MockFixtures::from_json_text(const std::string& text) {
  auto j = parse_json(text);
  JsonReader r(j);
  MockFixtures f;
  f.mode = r.string_field_or("mode", "echo");
  if (f.mode != "echo" && f.mode != "script")
    r.at("mode").fail("mode must be 'echo' or 'script'");
  f.script = r.string_array_field_or("script");
  if (f.mode == "script" && f.script.empty())
    r.fail("script mode requires a non-empty script array");
  if (r.has("inject")) {
    auto arr = r.at("inject");
    for (std::size_t i = 0; i < arr.array_size(); ++i) {
      auto e = arr.at(i);
      MockFixtures::Injection inj;
      inj.times = static_cast<int>(e.int_field("times"));
      inj.status = static_cast<int>(e.int_field("status"));
      f.inject.push_back(inj);
    }
  }
  return f;
}

MockFixtures MockFixtures::from_file(const std::string& path) {
  return from_json_text(read_text_file(path));
}

struct MockChatServer::Impl {
  MockFixtures fixtures;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  std::mutex mu;
  std::size_t script_index = 0;
  std::size_t inject_index = 0;
  int inject_remaining = 0;
  std::atomic<int> served{0};

  explicit Impl(MockFixtures f) : fixtures(std::move(f)) {
    if (!fixtures.inject.empty()) inject_remaining = fixtures.inject[0].times;

    // no SO_REUSEPORT (the httplib default): binding a taken port must fail
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes),
                 sizeof(yes));
    });

    server.Post("/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      served.fetch_add(1);
      {
        std::lock_guard lock(mu);
        while (inject_index < fixtures.inject.size() && inject_remaining == 0) {
          ++inject_index;
          inject_remaining =
              inject_index < fixtures.inject.size() ? fixtures.inject[inject_index].times : 0;
        }
        if (inject_index < fixtures.inject.size() && inject_remaining > 0) {
          --inject_remaining;
          res.status = fixtures.inject[inject_index].status;
          res.set_content("{\"error\":\"injected\"}", "application/json");
          return;
        }
      }

      auto body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.contains("messages") || !body["messages"].is_array()) {
        res.status = 400;
        res.set_content("{\"error\":\"bad request\"}", "application/json");
        return;
      }

      std::string reply;
      if (fixtures.mode == "script") {
        std::lock_guard lock(mu);
        reply = fixtures.script[std::min(script_index, fixtures.script.size() - 1)];
        if (script_index + 1 < fixtures.script.size()) ++script_index;
      } else {
        const auto& msgs = body["messages"];
        if (!msgs.empty() && msgs.back().contains("content") && msgs.back()["content"].is_string())
          reply = msgs.back()["content"].get<std::string>();
      }

      json out{{"id", "mock-0"},
               {"object", "chat.completion"},
               {"model", body.value("model", "mock")},
               {"choices",
                json::array({json{{"index", 0},
                                  {"message", json{{"role", "assistant"}, {"content", reply}}},
                                  {"finish_reason", "stop"}}})}};
      res.status = 200;
      res.set_content(out.dump(), "application/json");
    });
  }
};

MockChatServer::MockChatServer(MockFixtures fixtures)
    : impl_(std::make_unique<Impl>(std::move(fixtures))) {}

MockChatServer::~MockChatServer() { stop(); }

bool MockChatServer::start(int port) {
  if (port == 0) {
    impl_->port = impl_->server.bind_to_any_port("127.0.0.1");
    if (impl_->port <= 0) return false;
  } else {
    if (!impl_->server.bind_to_port("127.0.0.1", port)) return false;
    impl_->port = port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return true;
}

void MockChatServer::stop() {
  if (impl_ && impl_->thread.joinable()) {
    impl_->server.stop();
    impl_->thread.join();
  }
}

int MockChatServer::port() const { return impl_->port; }

std::string MockChatServer::base_url() const {
  return "http://127.0.0.1:" + std::to_string(impl_->port);
}

int MockChatServer::requests_served() const { return impl_->served.load(); }

}  // namespace legalsim
