#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "obsui/backend.hpp"

namespace obsui {

// Character-cell implementation of the backend contract. Widget semantics and
// the call log are identical to the headless backend; this adds a box-drawing
// presentation and a key-driven input loop so the demos are usable by hand.
//
// Keys: tab moves focus between buttons, enter/space activates the focused
// button, q requests the root window's close protocol.
class TerminalBackend final : public BackendCore {
 public:
  TerminalBackend() = default;
  ~TerminalBackend() override;

  // Blocks, redrawing on every mutation and translating key input into the
  // same queued-callback path as simulate_click, until `root` is hidden or
  // destroyed. Throws TerminalUnavailableError without an attached terminal.
  void run_interactive(WidgetHandle root);

  // Presentation of one widget subtree as screen rows. Pure with respect to
  // the terminal; exposed for layout tests.
  std::vector<std::string> render_lines(WidgetHandle w) const;

  // Alive, effectively-visible buttons under w, in tree order (focus ring).
  std::vector<WidgetHandle> focusable_buttons(WidgetHandle root) const;

 protected:
  void on_mutated() override;

 private:
  void draw(WidgetHandle root);

  std::atomic<bool> interactive_{false};
  std::atomic<bool> stop_input_{false};
  WidgetHandle focus_;
  WidgetHandle root_;
};

}  // namespace obsui
