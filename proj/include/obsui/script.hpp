#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "obsui/backend.hpp"
#include "obsui/renderer.hpp"

// Scripted-event harness for deterministic headless runs. Scripts are plain
// text, one command per line, `#` comments allowed:
//
//   click <widget-path | button-label>
//   commit <obs-name> add1|sub1|set <int>|set-text "<text>"
//   expect-label <widget-path> "<text>"
//   expect-log-count <op-kind> <int>
//   idle
//
// A widget path walks the live tree from the render root: name segments
// assert the widget kind (window/panel/button/label), integer segments index
// the alive children in creation order. Example: window/0/panel/1 is the
// second live child of the root window's first live child, which must be a
// panel. Resolution failures are script errors, never silent skips.

namespace obsui {

struct CommitOp {
  enum class Kind { Add1, Sub1, Set, SetText };
  Kind kind = Kind::Add1;
  std::int64_t value = 0;
  std::string text;
};

// Demo-registered named commit targets for `commit <obs-name> ...`.
using CommitFn = std::function<void(const CommitOp&)>;
using CommitTargets = std::map<std::string, CommitFn>;

struct ScriptCommand {
  enum class Type { Click, Commit, ExpectLabel, ExpectLogCount, Idle };
  Type type = Type::Idle;
  int line = 0;
  std::string target;   // click/expect-label path, commit obs-name
  CommitOp op;          // commit payload
  std::string expected; // expect-label text
  OpKind op_kind = OpKind::SetLabel;  // expect-log-count kind
  std::int64_t count = 0;             // expect-log-count value
};

// Throws ScriptError with the offending line number on malformed input.
std::vector<ScriptCommand> parse_script(std::istream& in);
std::vector<ScriptCommand> parse_script_text(const std::string& text);
std::vector<ScriptCommand> parse_script_file(const std::string& path);

// Throws ScriptError when the path does not resolve against the live tree.
WidgetHandle resolve_widget_path(const BackendCore& backend, WidgetHandle root,
                                 std::string_view path);

struct ScriptReport {
  struct Expectation {
    bool passed = false;
    std::string text;
  };
  std::vector<Expectation> expectations;

  bool all_passed() const {
    for (const auto& e : expectations) {
      if (!e.passed) return false;
    }
    return true;
  }
};

// Executes commands in order against a headless-driven backend. Every click
// and commit pumps the loop to idle before the next command; `idle` pumps
// explicitly. Expectations never abort the run; resolution errors throw
// ScriptError.
ScriptReport run_script(BackendCore& backend, RenderRoot& root,
                        const std::vector<ScriptCommand>& commands,
                        const CommitTargets& targets);

}  // namespace obsui
