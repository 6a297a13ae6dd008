#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <csignal>
#include <cstdlib>
#include <filesystem>

#include "legalsim/backend.hpp"
#include "legalsim/json_io.hpp"
#include "legalsim/mock_server.hpp"

using namespace legalsim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("legalsim_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& sub = "") const { return (path / sub).string(); }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(LEGALSIM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_backend_cfg(const std::string& path, const std::string& body) {
  write_text_file(path, body);
}

}  // namespace

TEST_CASE("build/run/eval/report chain over scripted fixtures") {
  TempDir dir("chain");

  REQUIRE(run_cli("build --fixtures --seed 7 --count 1 --out " + dir.str("fx")) == 0);
  CHECK(fs::exists(dir.str("fx/configs")));
  CHECK(fs::exists(dir.str("fx/scripts/perfect.json")));
  std::size_t configs = 0;
  for (auto& e : fs::directory_iterator(dir.str("fx/configs"))) (void)e, ++configs;
  CHECK(configs == 6);

  write_backend_cfg(dir.str("scripted.json"),
                    "{\"type\":\"scripted\",\"scripts\":\"" + dir.str("fx/scripts/perfect.json") +
                        "\"}");
  write_backend_cfg(dir.str("judge.json"), "{\"type\":\"heuristic\"}");

  REQUIRE(run_cli("run --configs " + dir.str("fx") + " --agent " + dir.str("scripted.json") +
                  " --env-driver " + dir.str("scripted.json") + " --judge " + dir.str("judge.json") +
                  " --parallel 2 --out " + dir.str("runs")) == 0);
  CHECK(fs::exists(dir.str("runs/manifest.json")));

  // resume over a finished batch executes nothing (idempotent)
  REQUIRE(run_cli("run --configs " + dir.str("fx") + " --agent " + dir.str("scripted.json") +
                  " --env-driver " + dir.str("scripted.json") + " --judge " + dir.str("judge.json") +
                  " --resume --out " + dir.str("runs")) == 0);

  REQUIRE(run_cli("eval --runs " + dir.str("runs") + " --judge " + dir.str("judge.json") +
                  " --out " + dir.str("scores")) == 0);
  CHECK(fs::exists(dir.str("scores/manifest.json")));

  // eval twice: byte-identical score cards
  REQUIRE(run_cli("eval --runs " + dir.str("runs") + " --judge " + dir.str("judge.json") +
                  " --out " + dir.str("scores2")) == 0);
  std::size_t cards = 0;
  for (auto& entry : fs::recursive_directory_iterator(dir.str("scores"))) {
    if (!entry.is_regular_file()) continue;
    auto rel = fs::relative(entry.path(), dir.str("scores"));
    auto other = fs::path(dir.str("scores2")) / rel;
    REQUIRE(fs::exists(other));
    CHECK(read_text_file(entry.path().string()) == read_text_file(other.string()));
    if (entry.path().string().ends_with(".score.json")) ++cards;
  }
  CHECK(cards == 6);

  REQUIRE(run_cli("report --scores " + dir.str("scores") + " --format all") == 0);
  CHECK(fs::exists(dir.str("scores/report.md")));
  CHECK(fs::exists(dir.str("scores/report.csv")));
  CHECK(fs::exists(dir.str("scores/report.json")));
}

TEST_CASE("build rejects unreadable input with exit 2") {
  TempDir dir("badin");
  CHECK(run_cli("build --input /nonexistent/nowhere --out " + dir.str("out")) == 2);
}

TEST_CASE("build instantiates configs from the shipped element records") {
  TempDir dir("frominput");
  std::string elements = std::string(LEGALSIM_SOURCE_DIR) + "/fixtures/elements";
  REQUIRE(run_cli("build --input " + elements + " --env-kinds KQ,CR --seed 3 --out " +
                  dir.str("out")) == 0);
  std::size_t kq = 0, cr = 0;
  for (auto& entry : fs::directory_iterator(dir.str("out/configs"))) {
    auto config = parse_episode_config(read_text_file(entry.path().string()));
    if (config.env_kind == EnvKind::KnowledgeQuestioning) ++kq;
    if (config.env_kind == EnvKind::CriminalCourt) ++cr;
  }
  CHECK(kq == 4);  // one per topic-list record
  CHECK(cr == 2);  // one per criminal record
}

TEST_CASE("build --extract structures raw documents through a chat backend") {
  TempDir dir("extract");
  // raw criminal judgment document plus an extraction endpoint that
  // replies with a structured record
  write_text_file(dir.str("docs/criminal_001.txt"), "raw judgment text about a theft case");
  std::string record = read_text_file(std::string(LEGALSIM_SOURCE_DIR) +
                                      "/fixtures/elements/criminal_case_0.json");
  MockFixtures fixtures;
  fixtures.mode = "script";
  fixtures.script = {record};
  MockChatServer server(fixtures);
  REQUIRE(server.start(0));
  write_backend_cfg(dir.str("extractor.json"),
                    "{\"type\":\"http\",\"base_url\":\"" + server.base_url() +
                        "\",\"model_name\":\"mock\",\"retry_initial_delay_ms\":5}");

  REQUIRE(run_cli("build --input " + dir.str("docs") + " --extract --backend " +
                  dir.str("extractor.json") + " --env-kinds CR --seed 5 --out " +
                  dir.str("out")) == 0);
  std::size_t configs = 0;
  for (auto& entry : fs::directory_iterator(dir.str("out/configs"))) {
    auto config = parse_episode_config(read_text_file(entry.path().string()));
    CHECK(config.env_kind == EnvKind::CriminalCourt);
    ++configs;
  }
  CHECK(configs == 1);

  // a backend that only talks prose produces a rejects file instead
  MockFixtures prose;
  prose.mode = "script";
  prose.script = {"I am not able to produce JSON."};
  MockChatServer bad(prose);
  REQUIRE(bad.start(0));
  write_backend_cfg(dir.str("bad_extractor.json"),
                    "{\"type\":\"http\",\"base_url\":\"" + bad.base_url() +
                        "\",\"model_name\":\"mock\",\"retry_initial_delay_ms\":5}");
  CHECK(run_cli("build --input " + dir.str("docs") + " --extract --backend " +
                dir.str("bad_extractor.json") + " --env-kinds CR --seed 5 --out " +
                dir.str("out_bad")) == 2);  // nothing built
  CHECK(fs::exists(dir.str("out_bad/rejects.json")));
}

TEST_CASE("run rejects malformed backend configs with exit 2") {
  TempDir dir("badcfg");
  REQUIRE(run_cli("build --fixtures --count 1 --out " + dir.str("fx")) == 0);
  write_backend_cfg(dir.str("bad.json"), "{\"type\":\"teleport\"}");
  write_backend_cfg(dir.str("judge.json"), "{\"type\":\"heuristic\"}");
  CHECK(run_cli("run --configs " + dir.str("fx") + " --agent " + dir.str("bad.json") +
                " --env-driver " + dir.str("bad.json") + " --judge " + dir.str("judge.json") +
                " --out " + dir.str("runs")) == 2);
}

TEST_CASE("eval requires transcripts; report requires cards") {
  TempDir dir("missing");
  write_backend_cfg(dir.str("judge.json"), "{\"type\":\"heuristic\"}");
  CHECK(run_cli("eval --runs " + dir.str("empty") + " --judge " + dir.str("judge.json") +
                " --out " + dir.str("scores")) == 2);
  CHECK(run_cli("report --scores " + dir.str("empty") + " --format markdown") == 2);
}

TEST_CASE("erroring agents surface as exit 1 with a partial batch") {
  TempDir dir("partial");
  REQUIRE(run_cli("build --fixtures --count 1 --env-kinds KQ --out " + dir.str("fx")) == 0);
  // agent talks to a dead endpoint; env roles are scripted
  write_backend_cfg(dir.str("dead.json"),
                    R"({"type":"http","base_url":"http://127.0.0.1:9","model_name":"x",)"
                    R"("max_retries":0,"timeout_s":0.2,"retry_initial_delay_ms":1})");
  write_backend_cfg(dir.str("scripted.json"),
                    "{\"type\":\"scripted\",\"scripts\":\"" + dir.str("fx/scripts/perfect.json") +
                        "\"}");
  write_backend_cfg(dir.str("judge.json"), "{\"type\":\"heuristic\"}");
  CHECK(run_cli("run --configs " + dir.str("fx") + " --agent " + dir.str("dead.json") +
                " --env-driver " + dir.str("scripted.json") + " --judge " + dir.str("judge.json") +
                " --out " + dir.str("runs")) == 1);
}

TEST_CASE("mock-server subcommand serves the chat protocol") {
  TempDir dir("mock");
  write_text_file(dir.str("fixtures.json"), R"({"mode":"script","script":["scripted reply"]})");

  pid_t pid = fork();
  REQUIRE(pid >= 0);
  if (pid == 0) {
    std::string fixtures = dir.str("fixtures.json");
    execl(LEGALSIM_CLI_PATH, LEGALSIM_CLI_PATH, "mock-server", "--port", "18931", "--fixtures",
          fixtures.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  BackendConfig config;
  config.base_url = "http://127.0.0.1:18931";
  config.model_name = "mock";
  config.max_retries = 8;
  config.retry_initial_delay_ms = 50;
  HttpChatBackend backend(config);
  std::string reply;
  try {
    reply = backend.chat({{ChatRole::System, "s"}, {ChatRole::User, "ping"}});
  } catch (const BackendError&) {
    // fall through; assertion below fails with diagnostics
  }
  kill(pid, SIGKILL);
  waitpid(pid, nullptr, 0);
  CHECK(reply == "scripted reply");
}

TEST_CASE("mock-server exits 2 when the port is taken") {
  MockChatServer occupant{MockFixtures{}};
  REQUIRE(occupant.start(18932));
  CHECK(run_cli("mock-server --port 18932") == 2);
}
