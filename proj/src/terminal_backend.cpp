#include "obsui/terminal_backend.hpp"

#include <poll.h>
#include <termios.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>

#include "obsui/errors.hpp"

namespace obsui {
namespace {

// Raw-mode guard for the controlling terminal.
struct RawMode {
  RawMode() {
    tcgetattr(STDIN_FILENO, &saved);
    termios raw = saved;
    raw.c_lflag &= ~static_cast<tcflag_t>(ICANON | ECHO);
    raw.c_cc[VMIN] = 1;
    raw.c_cc[VTIME] = 0;
    tcsetattr(STDIN_FILENO, TCSANOW, &raw);
  }
  ~RawMode() { tcsetattr(STDIN_FILENO, TCSANOW, &saved); }
  termios saved;
};

std::size_t display_width(const std::vector<std::string>& lines) {
  std::size_t w = 0;
  for (const std::string& l : lines) w = std::max(w, l.size());
  return w;
}

void write_out(std::string_view text) {
  ssize_t n = ::write(STDOUT_FILENO, text.data(), text.size());
  (void)n;
}

}  // namespace

TerminalBackend::~TerminalBackend() { stop_input_.store(true); }

void TerminalBackend::on_mutated() {
  if (interactive_.load() && !root_.is_none()) draw(root_);
}

std::vector<WidgetHandle> TerminalBackend::focusable_buttons(WidgetHandle root) const {
  std::vector<WidgetHandle> out;
  if (!alive(root)) return out;
  WidgetRecord rec = record(root);
  if (rec.kind == WidgetKind::Window && !rec.visible) return out;
  if (rec.kind == WidgetKind::Button) out.push_back(root);
  for (WidgetHandle child : live_children(root)) {
    auto nested = focusable_buttons(child);
    out.insert(out.end(), nested.begin(), nested.end());
  }
  return out;
}

std::vector<std::string> TerminalBackend::render_lines(WidgetHandle w) const {
  if (!alive(w)) return {};
  WidgetRecord rec = record(w);
  switch (rec.kind) {
    case WidgetKind::Window: {
      if (!rec.visible) return {};
      std::vector<std::string> lines;
      lines.push_back("== " + rec.label + " ==");
      for (WidgetHandle child : live_children(w)) {
        for (std::string& l : render_lines(child)) lines.push_back(" " + l);
      }
      return lines;
    }
    case WidgetKind::Panel: {
      std::vector<std::string> lines;
      if (rec.orientation == Orientation::Vertical) {
        // Children stack; one padding row between them.
        bool first = true;
        for (WidgetHandle child : live_children(w)) {
          auto sub = render_lines(child);
          if (sub.empty()) continue;
          if (!first) lines.emplace_back();
          first = false;
          lines.insert(lines.end(), sub.begin(), sub.end());
        }
      } else {
        // Children sit side by side with a single-cell gap.
        std::vector<std::vector<std::string>> blocks;
        std::size_t rows = 0;
        for (WidgetHandle child : live_children(w)) {
          auto sub = render_lines(child);
          if (sub.empty()) continue;
          rows = std::max(rows, sub.size());
          blocks.push_back(std::move(sub));
        }
        for (std::size_t r = 0; r < rows; ++r) {
          std::string line;
          for (std::size_t b = 0; b < blocks.size(); ++b) {
            std::size_t w_b = display_width(blocks[b]);
            std::string cell = r < blocks[b].size() ? blocks[b][r] : "";
            cell.resize(w_b, ' ');
            if (b) line += ' ';
            line += cell;
          }
          while (!line.empty() && line.back() == ' ') line.pop_back();
          lines.push_back(std::move(line));
        }
      }
      return lines;
    }
    case WidgetKind::Button: {
      std::string text = "[" + rec.label + "]";
      if (rec.handle == focus_) text = ">" + text + "<";
      return {text};
    }
    case WidgetKind::Label:
      return {rec.label};
  }
  return {};
}

void TerminalBackend::draw(WidgetHandle root) {
  std::string out = "\x1b[2J\x1b[H";
  for (const std::string& line : render_lines(root)) {
    out += line;
    out += "\r\n";
  }
  out += "\r\n[tab] focus  [enter/space] press  [q] close\r\n";
  write_out(out);
}

void TerminalBackend::run_interactive(WidgetHandle root) {
  if (!isatty(STDIN_FILENO) || !isatty(STDOUT_FILENO)) throw TerminalUnavailableError();
  WidgetRecord rec = record(root);
  if (rec.kind != WidgetKind::Window || !rec.visible || !rec.alive)
    throw Error("run_interactive requires a shown window");

  root_ = root;
  auto focusables = focusable_buttons(root);
  focus_ = focusables.empty() ? WidgetHandle::none() : focusables.front();

  RawMode raw;
  interactive_.store(true);
  stop_input_.store(false);
  draw(root);

  // Input runs on its own thread and only enqueues; all widget mutation and
  // drawing happen on this (event-loop) thread.
  std::thread input([this, live = liveness()] {
    while (!stop_input_.load()) {
      pollfd pfd{STDIN_FILENO, POLLIN, 0};
      if (poll(&pfd, 1, 50) <= 0) continue;
      char key = 0;
      if (read(STDIN_FILENO, &key, 1) != 1) continue;
      loop()->post(Job{JobKind::Callback, [this, key, live] {
                         if (!live->load()) return;
                         auto ring = focusable_buttons(root_);
                         if (key == '\t') {
                           if (ring.empty()) {
                             focus_ = WidgetHandle::none();
                           } else {
                             auto it = std::find(ring.begin(), ring.end(), focus_);
                             focus_ = (it == ring.end() || std::next(it) == ring.end())
                                          ? ring.front()
                                          : *std::next(it);
                           }
                           draw(root_);
                         } else if (key == '\n' || key == ' ') {
                           if (!focus_.is_none() && alive(focus_)) simulate_click(focus_);
                         } else if (key == 'q') {
                           request_close(root_);
                         }
                       }});
    }
  });

  while (alive(root) && record(root).visible) {
    loop()->run_one(std::chrono::milliseconds(100));
  }
  loop()->drain_until_idle();

  stop_input_.store(true);
  input.join();
  interactive_.store(false);
  write_out("\x1b[2J\x1b[H");
}

}  // namespace obsui
