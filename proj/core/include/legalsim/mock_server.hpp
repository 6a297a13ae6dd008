#pragma once

#include <memory>
#include <string>
#include <vector>

namespace legalsim {

// Programmable chat-completions endpoint for tests and offline runs.
//
// Fixture file shape:
//   {
//     "mode": "echo" | "script",
//     "script": ["first reply", "second reply", ...],
//     "inject": [{"times": 2, "status": 429}]      // optional, consumed first
//   }
// Echo mode replies with the latest user message; script mode returns the
// scripted replies in order (repeating the last one when exhausted).
struct MockFixtures {
  std::string mode = "echo";
  std::vector<std::string> script;
  struct Injection {
    int times = 0;
    int status = 500;
  };
  std::vector<Injection> inject;

  static MockFixtures from_json_text(const std::string& text);
  static MockFixtures from_file(const std::string& path);
};

class MockChatServer {
 public:
  explicit MockChatServer(MockFixtures fixtures);
  ~MockChatServer();

  MockChatServer(const MockChatServer&) = delete;
  MockChatServer& operator=(const MockChatServer&) = delete;

  // Binds to 127.0.0.1. Port 0 picks a free port. Returns false if the
  // port could not be bound.
  bool start(int port);
  void stop();

  int port() const;
  std::string base_url() const;
  int requests_served() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace legalsim
