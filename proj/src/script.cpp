#include "obsui/script.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "obsui/errors.hpp"

namespace obsui {
namespace {

[[noreturn]] void fail_line(int line, const std::string& why) {
  throw ScriptError("script line " + std::to_string(line) + ": " + why);
}

// Splits a command line into tokens; double-quoted tokens keep spaces and
// support \" \\ \n \t escapes.
std::vector<std::string> tokenize(const std::string& line, int line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '#') break;
    std::string token;
    if (line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '\\' && i < line.size()) {
          char esc = line[i++];
          switch (esc) {
            case 'n': token += '\n'; break;
            case 't': token += '\t'; break;
            default: token += esc;
          }
        } else if (c == '"') {
          closed = true;
          break;
        } else {
          token += c;
        }
      }
      if (!closed) fail_line(line_no, "unterminated quote");
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        token += line[i++];
      }
    }
    out.push_back(std::move(token));
  }
  return out;
}

std::int64_t parse_int(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(tok, &used);
    if (used != tok.size()) fail_line(line_no, "bad integer '" + tok + "'");
    return v;
  } catch (const ScriptError&) {
    throw;
  } catch (...) {
    fail_line(line_no, "bad integer '" + tok + "'");
  }
}

WidgetKind kind_from_name(std::string_view name, int line_or_zero, const std::string& path) {
  if (name == "window") return WidgetKind::Window;
  if (name == "panel") return WidgetKind::Panel;
  if (name == "button") return WidgetKind::Button;
  if (name == "label") return WidgetKind::Label;
  (void)line_or_zero;
  throw ScriptError("bad widget kind '" + std::string(name) + "' in path '" + path + "'");
}

void collect_buttons(const BackendCore& b, WidgetHandle w, const std::string& label,
                     std::vector<WidgetHandle>& out) {
  WidgetRecord rec = b.record(w);
  if (rec.kind == WidgetKind::Button && rec.label == label) out.push_back(w);
  for (WidgetHandle child : b.live_children(w)) collect_buttons(b, child, label, out);
}

}  // namespace

std::vector<ScriptCommand> parse_script(std::istream& in) {
  std::vector<ScriptCommand> commands;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    ScriptCommand cmd;
    cmd.line = line_no;
    const std::string& head = tokens[0];
    if (head == "click") {
      if (tokens.size() != 2) fail_line(line_no, "usage: click <widget-path|label>");
      cmd.type = ScriptCommand::Type::Click;
      cmd.target = tokens[1];
    } else if (head == "commit") {
      if (tokens.size() < 3) fail_line(line_no, "usage: commit <obs-name> <op>");
      cmd.type = ScriptCommand::Type::Commit;
      cmd.target = tokens[1];
      const std::string& op = tokens[2];
      if (op == "add1" && tokens.size() == 3) {
        cmd.op.kind = CommitOp::Kind::Add1;
      } else if (op == "sub1" && tokens.size() == 3) {
        cmd.op.kind = CommitOp::Kind::Sub1;
      } else if (op == "set" && tokens.size() == 4) {
        cmd.op.kind = CommitOp::Kind::Set;
        cmd.op.value = parse_int(tokens[3], line_no);
      } else if (op == "set-text" && tokens.size() == 4) {
        cmd.op.kind = CommitOp::Kind::SetText;
        cmd.op.text = tokens[3];
      } else {
        fail_line(line_no, "bad commit op '" + op + "'");
      }
    } else if (head == "expect-label") {
      if (tokens.size() != 3) fail_line(line_no, "usage: expect-label <widget-path> \"text\"");
      cmd.type = ScriptCommand::Type::ExpectLabel;
      cmd.target = tokens[1];
      cmd.expected = tokens[2];
    } else if (head == "expect-log-count") {
      if (tokens.size() != 3) fail_line(line_no, "usage: expect-log-count <kind> <int>");
      cmd.type = ScriptCommand::Type::ExpectLogCount;
      auto kind = op_kind_from(tokens[1]);
      if (!kind) fail_line(line_no, "unknown op kind '" + tokens[1] + "'");
      cmd.op_kind = *kind;
      cmd.count = parse_int(tokens[2], line_no);
    } else if (head == "idle") {
      if (tokens.size() != 1) fail_line(line_no, "usage: idle");
      cmd.type = ScriptCommand::Type::Idle;
    } else {
      fail_line(line_no, "unknown command '" + head + "'");
    }
    commands.push_back(std::move(cmd));
  }
  return commands;
}

std::vector<ScriptCommand> parse_script_text(const std::string& text) {
  std::istringstream in(text);
  return parse_script(in);
}

std::vector<ScriptCommand> parse_script_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScriptError("cannot open script file '" + path + "'");
  return parse_script(in);
}

WidgetHandle resolve_widget_path(const BackendCore& backend, WidgetHandle root,
                                 std::string_view path) {
  if (root.is_none() || !backend.alive(root)) {
    throw ScriptError("no live render root for path '" + std::string(path) + "'");
  }
  WidgetHandle cursor = root;
  std::size_t i = 0;
  while (i < path.size()) {
    std::size_t end = path.find('/', i);
    if (end == std::string_view::npos) end = path.size();
    std::string_view seg = path.substr(i, end - i);
    i = end + 1;
    if (seg.empty()) throw ScriptError("empty segment in path '" + std::string(path) + "'");
    bool numeric = true;
    for (char c : seg) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        numeric = false;
        break;
      }
    }
    if (numeric) {
      std::size_t index = 0;
      for (char c : seg) index = index * 10 + static_cast<std::size_t>(c - '0');
      auto children = backend.live_children(cursor);
      if (index >= children.size()) {
        throw ScriptError("index " + std::string(seg) + " out of range in path '" +
                          std::string(path) + "'");
      }
      cursor = children[index];
    } else {
      WidgetKind expect = kind_from_name(seg, 0, std::string(path));
      if (backend.record(cursor).kind != expect) {
        throw ScriptError("path '" + std::string(path) + "': widget is not a " +
                          std::string(seg));
      }
    }
  }
  return cursor;
}

ScriptReport run_script(BackendCore& backend, RenderRoot& root,
                        const std::vector<ScriptCommand>& commands,
                        const CommitTargets& targets) {
  ScriptReport report;
  for (const ScriptCommand& cmd : commands) {
    switch (cmd.type) {
      case ScriptCommand::Type::Click: {
        WidgetHandle target;
        if (cmd.target.find('/') != std::string::npos) {
          target = resolve_widget_path(backend, root.root_widget(), cmd.target);
        } else {
          std::vector<WidgetHandle> matches;
          if (!root.root_widget().is_none() && backend.alive(root.root_widget())) {
            collect_buttons(backend, root.root_widget(), cmd.target, matches);
          }
          if (matches.empty()) {
            fail_line(cmd.line, "no live button labeled '" + cmd.target + "'");
          }
          if (matches.size() > 1) {
            fail_line(cmd.line, "ambiguous button label '" + cmd.target + "'");
          }
          target = matches.front();
        }
        try {
          backend.simulate_click(target);
        } catch (const Error& e) {
          fail_line(cmd.line, std::string("click failed: ") + e.what());
        }
        run_until_idle(root);
        break;
      }
      case ScriptCommand::Type::Commit: {
        auto it = targets.find(cmd.target);
        if (it == targets.end()) fail_line(cmd.line, "unknown observable '" + cmd.target + "'");
        it->second(cmd.op);
        run_until_idle(root);
        break;
      }
      case ScriptCommand::Type::ExpectLabel: {
        WidgetHandle target = resolve_widget_path(backend, root.root_widget(), cmd.target);
        std::string actual = backend.record(target).label;
        ScriptReport::Expectation e;
        e.passed = actual == cmd.expected;
        e.text = "expect-label " + cmd.target + " " + quote_text(cmd.expected);
        if (!e.passed) e.text += " (actual " + quote_text(actual) + ")";
        report.expectations.push_back(std::move(e));
        break;
      }
      case ScriptCommand::Type::ExpectLogCount: {
        std::int64_t n = 0;
        for (const BackendOp& op : backend.call_log()) {
          if (op.kind == cmd.op_kind) ++n;
        }
        ScriptReport::Expectation e;
        e.passed = n == cmd.count;
        e.text = "expect-log-count " + std::string(to_string(cmd.op_kind)) + " " +
                 std::to_string(cmd.count);
        if (!e.passed) e.text += " (actual " + std::to_string(n) + ")";
        report.expectations.push_back(std::move(e));
        break;
      }
      case ScriptCommand::Type::Idle:
        run_until_idle(root);
        break;
    }
  }
  return report;
}

}  // namespace obsui
