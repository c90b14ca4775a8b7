#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// Exit-code contract of the demo binary: 0 success, 1 failed expectation,
// 2 usage/script errors.

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(OBSUI_DEMO_BIN) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string write_tmp_script(const std::string& name, const std::string& body) {
  std::string path = "/tmp/obsui_cli_" + std::to_string(::getpid()) + "_" + name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("cli: passing script exits 0") {
  CHECK(run("demo counter --backend headless --script " + std::string(OBSUI_SCRIPTS_DIR) +
            "/counter_basic.txt") == 0);
}

TEST_CASE("cli: script without expectations exits 0") {
  std::string script = write_tmp_script("noexpect.txt", "click +\nidle\n");
  CHECK(run("demo counter --backend headless --script " + script) == 0);
  std::remove(script.c_str());
}

TEST_CASE("cli: failed expectation exits 1") {
  std::string script =
      write_tmp_script("fail.txt", "click +\nexpect-label window/0/panel/1 \"99\"\n");
  CHECK(run("demo counter --backend headless --script " + script) == 1);
  std::remove(script.c_str());
}

TEST_CASE("cli: usage and script errors exit 2") {
  CHECK(run("demo nosuchdemo --backend headless") == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("demo counter --backend headless --script /nonexistent/path.txt") == 2);

  std::string bad = write_tmp_script("bad.txt", "frobnicate everything\n");
  CHECK(run("demo counter --backend headless --script " + bad) == 2);
  std::remove(bad.c_str());

  std::string unresolved = write_tmp_script("unresolved.txt", "click window/9/panel/0\n");
  CHECK(run("demo counter --backend headless --script " + unresolved) == 2);
  std::remove(unresolved.c_str());

  // Scripts require the headless backend.
  CHECK(run("demo counter --backend terminal --script " + std::string(OBSUI_SCRIPTS_DIR) +
            "/counter_basic.txt") == 2);
}

TEST_CASE("cli: dump-log writes the session log") {
  std::string dump = "/tmp/obsui_cli_" + std::to_string(::getpid()) + "_dump.log";
  CHECK(run("demo goodbye --backend headless --script " + std::string(OBSUI_SCRIPTS_DIR) +
            "/goodbye_click.txt --dump-log " + dump) == 0);
  std::ifstream in(dump);
  REQUIRE(static_cast<bool>(in));
  std::string first;
  std::getline(in, first);
  CHECK(first == "1 CreateWindow #1 \"Goodbye World\"");
  in.close();
  std::remove(dump.c_str());
}
