#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "obsui/event_loop.hpp"
#include "obsui/view.hpp"

// The imperative core: a retained-mode widget toolkit with parent-first
// construction, mutable properties and queued event callbacks. BackendCore
// implements the full contract and records every operation in an append-only
// call log; the headless and terminal backends are thin variations on it.

namespace obsui {

enum class WidgetKind { Window, Panel, Button, Label };

enum class OpKind {
  CreateWindow,
  CreatePanel,
  CreateButton,
  CreateLabel,
  SetLabel,
  Show,
  Destroy,
  InvokeCallback,
};

std::string_view to_string(OpKind kind);
std::string_view to_string(WidgetKind kind);
std::optional<OpKind> op_kind_from(std::string_view name);

// C-style quoting for label text in the log format.
std::string quote_text(std::string_view text);

// One recorded imperative operation. `args` holds the op-specific payload
// pre-rendered as log tokens (labels quoted, handles as #id).
struct BackendOp {
  std::uint64_t seq = 0;
  OpKind kind;
  WidgetHandle target;
  std::vector<std::string> args;
};

// Log text format: one op per line, `seq kind target args...`, fields
// space-separated, labels quoted, handles as #id, absent target as -.
std::string format_op(const BackendOp& op);
std::string format_log(const std::vector<BackendOp>& log);

// Public snapshot of one widget's state.
struct WidgetRecord {
  WidgetHandle handle;
  WidgetKind kind = WidgetKind::Window;
  WidgetHandle parent;  // none for windows and root-rendered widgets
  std::string label;
  Orientation orientation = Orientation::Horizontal;
  bool visible = false;
  bool alive = true;
  std::vector<WidgetHandle> children;  // creation order, dead ones included
};

// Abstract toolkit surface the renderer and views program against.
// Mutations and queries belong on the event-loop thread of this backend.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual WidgetHandle create_window(const std::string& title) = 0;
  virtual WidgetHandle create_panel(WidgetHandle parent, Orientation orientation) = 0;
  virtual WidgetHandle create_button(WidgetHandle parent, const std::string& label,
                                     std::function<void()> on_click) = 0;
  virtual WidgetHandle create_label(WidgetHandle parent, const std::string& text) = 0;
  virtual void set_label(WidgetHandle w, const std::string& text) = 0;
  virtual void show(WidgetHandle w, bool visible) = 0;

  // Destroys the subtree depth-first, children before parents.
  virtual void destroy_widget(WidgetHandle w) = 0;

  virtual bool supports(std::string_view widget_kind) const = 0;

  // Records an InvokeCallback entry; `tag` names protocol hooks such as the
  // window close path ("can-close", "on-close"). Plain clicks pass no tag.
  virtual void note_callback(WidgetHandle w, std::string_view tag = {}) = 0;

  // Handler run when the user asks a window to close (terminal: the q key).
  virtual void set_close_handler(WidgetHandle window, std::function<void()> handler) = 0;

  virtual WidgetRecord record(WidgetHandle w) const = 0;
  virtual bool alive(WidgetHandle w) const = 0;

  virtual std::shared_ptr<EventLoop> loop() const = 0;
};

// Deterministic recording implementation shared by the headless and terminal
// backends: dense consecutive handles in creation order, an append-only call
// log, and scripted event entry points. simulate_click and call_log are safe
// from any thread; everything else belongs on the event-loop thread.
class BackendCore : public Backend {
 public:
  BackendCore();
  ~BackendCore() override;

  WidgetHandle create_window(const std::string& title) override;
  WidgetHandle create_panel(WidgetHandle parent, Orientation orientation) override;
  WidgetHandle create_button(WidgetHandle parent, const std::string& label,
                             std::function<void()> on_click) override;
  WidgetHandle create_label(WidgetHandle parent, const std::string& text) override;
  void set_label(WidgetHandle w, const std::string& text) override;
  void show(WidgetHandle w, bool visible) override;
  void destroy_widget(WidgetHandle w) override;
  bool supports(std::string_view widget_kind) const override;
  void note_callback(WidgetHandle w, std::string_view tag = {}) override;
  void set_close_handler(WidgetHandle window, std::function<void()> handler) override;
  WidgetRecord record(WidgetHandle w) const override;
  bool alive(WidgetHandle w) const override;
  std::shared_ptr<EventLoop> loop() const override { return loop_; }

  // Enqueues the button's callback onto the event loop (never run inline).
  // Throws if w is dead or not a button at call time; if the button dies
  // before the job runs, the job is dropped silently.
  void simulate_click(WidgetHandle w);

  // Invokes the close handler installed for `window` (or hides it if none),
  // through the event loop, mirroring simulate_click.
  void request_close(WidgetHandle window);

  // Snapshot copy of the call log; stable under repeated calls.
  std::vector<BackendOp> call_log() const;
  std::string format_call_log() const;

  // Alive children of w, in creation order.
  std::vector<WidgetHandle> live_children(WidgetHandle w) const;

  // Root widgets (no parent), in creation order, alive only.
  std::vector<WidgetHandle> live_roots() const;

 protected:
  // Called after each mutation, on the mutating thread. The terminal backend
  // redraws here; the headless backend does nothing.
  virtual void on_mutated() {}

  // Liveness token for jobs that must not outlive the backend.
  std::shared_ptr<std::atomic<bool>> liveness() const { return live_; }

 private:
  struct Widget {
    WidgetRecord rec;
    std::function<void()> on_click;
    std::function<void()> close_handler;
  };

  Widget& require(WidgetHandle w);
  const Widget& require(WidgetHandle w) const;
  Widget& require_alive(WidgetHandle w);
  WidgetHandle new_widget(WidgetKind kind, WidgetHandle parent);
  void append(OpKind kind, WidgetHandle target, std::vector<std::string> args);
  void destroy_recursive(Widget& w);

  mutable std::mutex mu_;
  std::uint64_t tag_;
  std::uint64_t next_id_ = 0;
  std::uint64_t next_seq_ = 0;
  std::unordered_map<std::uint64_t, Widget> widgets_;
  std::vector<WidgetHandle> roots_;
  std::vector<BackendOp> log_;
  std::shared_ptr<EventLoop> loop_;
  // Queued jobs check this before touching the backend, so a pending click
  // outliving the backend is dropped rather than dereferenced.
  std::shared_ptr<std::atomic<bool>> live_;
};

}  // namespace obsui
