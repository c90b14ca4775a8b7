#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <memory>

#include "obsui/backend.hpp"
#include "obsui/view.hpp"

// Inversion of control: rendering a view kicks off its lifecycle. The
// renderer walks the view tree depth-first, creates each view's widget,
// registers one observer per dependency (each commit becomes a queued update
// job carrying the committed value), shows the root, and later tears the
// whole thing down. Application code never calls create/update/destroy
// itself.

namespace obsui {

namespace detail {
struct RenderRootState;
}

// Handle to one rendered view tree and its wiring. Copyable; copies alias the
// same render.
class RenderRoot {
 public:
  RenderRoot() = default;

  explicit operator bool() const { return state_ != nullptr; }

  WidgetHandle root_widget() const;

  // Live wiring subscriptions (diagnostic; 0 after teardown).
  std::size_t active_wiring() const;

  // Replaces the hook invoked when an update or callback job fails. The
  // default prints to stderr and keeps the loop running.
  void set_error_hook(std::function<void(std::exception_ptr)> hook);

 private:
  friend RenderRoot render(const View&, Backend&);
  friend std::size_t run_until_idle(RenderRoot&);
  friend void teardown(RenderRoot&);

  std::shared_ptr<detail::RenderRootState> state_;
};

// Renders `view` against `backend`: creates widgets depth-first, wires every
// dependency to a queued update, then shows the root widget. May be called
// from any thread; construction is handed to the backend's event-loop thread
// when one is pumping. Create-time errors destroy anything already created
// and rethrow.
RenderRoot render(const View& view, Backend& backend);

// Executes queued jobs FIFO until the queue is empty, including jobs enqueued
// by executed jobs. Returns the number of jobs executed. Job failures go to
// the error hook; the pump continues.
std::size_t run_until_idle(RenderRoot& root);

// Revokes all wiring subscriptions, calls each view's destroy leaf-first,
// then destroys the backend widgets (children before parents). Idempotent.
// Commits after teardown produce zero backend operations for this root.
void teardown(RenderRoot& root);

}  // namespace obsui
