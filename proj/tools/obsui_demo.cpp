#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "obsui/demos.hpp"
#include "obsui/headless_backend.hpp"
#include "obsui/renderer.hpp"
#include "obsui/script.hpp"
#include "obsui/terminal_backend.hpp"

// Exit codes: 0 success, 1 failed expectation, 2 usage or script error.

namespace {

int run_headless(const std::string& name, const std::string& script_path,
                 const std::string& dump_path) {
  obsui::DemoApp app = obsui::make_demo(name);
  obsui::HeadlessBackend backend;
  obsui::RenderRoot root = obsui::render(app.root, backend);
  obsui::run_until_idle(root);

  int rc = 0;
  if (!script_path.empty()) {
    auto commands = obsui::parse_script_file(script_path);
    obsui::ScriptReport report = obsui::run_script(backend, root, commands, app.commits);
    for (const auto& e : report.expectations) {
      std::cout << (e.passed ? "ok: " : "FAIL: ") << e.text << "\n";
    }
    rc = report.all_passed() ? 0 : 1;
  }
  obsui::run_until_idle(root);

  if (!dump_path.empty()) {
    std::ofstream out(dump_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write dump log '" << dump_path << "'\n";
      return 2;
    }
    out << backend.format_call_log();
  }

  obsui::teardown(root);
  return rc;
}

int run_terminal(const std::string& name) {
  obsui::DemoApp app = obsui::make_demo(name);
  obsui::TerminalBackend backend;
  obsui::RenderRoot root = obsui::render(app.root, backend);
  obsui::run_until_idle(root);
  backend.run_interactive(root.root_widget());
  obsui::teardown(root);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"observable-driven UI demos"};
  cli.require_subcommand(1);

  std::string name;
  std::string backend_choice = "auto";
  std::string script_path;
  std::string dump_path;

  CLI::App* demo = cli.add_subcommand("demo", "run a bundled demo program");
  demo->add_option("name", name, "demo name: counter | counters | goodbye | tracker")
      ->required()
      ->check(CLI::IsMember(obsui::demo_names()));
  demo->add_option("--backend", backend_choice, "backend: headless | terminal")
      ->check(CLI::IsMember({"auto", "headless", "terminal"}));
  demo->add_option("--script", script_path, "event script for a deterministic headless run");
  demo->add_option("--dump-log", dump_path, "write the backend call log to this file");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    cli.exit(e);
    return 2;
  }

  bool interactive = isatty(STDIN_FILENO) && isatty(STDOUT_FILENO);
  if (backend_choice == "auto") backend_choice = interactive ? "terminal" : "headless";

  try {
    if (backend_choice == "terminal") {
      if (!script_path.empty() || !dump_path.empty()) {
        std::cerr << "--script/--dump-log require --backend headless\n";
        return 2;
      }
      return run_terminal(name);
    }
    return run_headless(name, script_path, dump_path);
  } catch (const obsui::ScriptError& e) {
    std::cerr << "script error: " << e.what() << "\n";
    return 2;
  } catch (const obsui::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
