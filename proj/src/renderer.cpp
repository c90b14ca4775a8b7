#include "obsui/renderer.hpp"

#include <atomic>
#include <cstdio>
#include <future>
#include <mutex>
#include <utility>
#include <vector>

namespace obsui {
namespace detail {

struct Mount {
  View view;
  WidgetHandle widget;
  std::vector<Subscription> subs;
  std::vector<std::unique_ptr<Mount>> children;
};

struct RenderRootState {
  Backend* backend = nullptr;  // must outlive the render root
  std::shared_ptr<EventLoop> loop;
  std::unique_ptr<Mount> root;
  WidgetHandle root_widget;
  std::atomic<bool> torn_down{false};

  std::mutex hook_mu;
  std::function<void(std::exception_ptr)> error_hook;

  ~RenderRootState() {
    // A dropped, never-torn-down root must not keep observers alive. Widget
    // destruction still requires an explicit teardown.
    if (root) {
      for (Subscription& sub : collect_subs(*root)) sub.unobserve();
    }
  }

  static std::vector<Subscription> collect_subs(Mount& mount) {
    std::vector<Subscription> out = mount.subs;
    for (auto& child : mount.children) {
      auto nested = collect_subs(*child);
      out.insert(out.end(), nested.begin(), nested.end());
    }
    return out;
  }

  void report(std::exception_ptr err) {
    std::function<void(std::exception_ptr)> hook;
    {
      std::lock_guard lk(hook_mu);
      hook = error_hook;
    }
    if (hook) {
      hook(err);
      return;
    }
    try {
      if (err) std::rethrow_exception(err);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "obsui: render job error: %s\n", e.what());
    } catch (...) {
      std::fprintf(stderr, "obsui: render job error (unknown)\n");
    }
  }
};

namespace {

void wire_dependency(const std::shared_ptr<RenderRootState>& state, Mount& mount,
                     const AnyObs& dep, std::vector<Subscription>& wired) {
  std::weak_ptr<RenderRootState> weak_state = state;
  View view = mount.view;
  WidgetHandle widget = mount.widget;
  Subscription sub = dep->observe_any([weak_state, view, widget, dep](const std::any& value) {
    auto st = weak_state.lock();
    if (!st || st->torn_down.load()) return;
    // Push semantics: the job carries the committed value, applied FIFO on
    // the event-loop thread. Jobs whose widget died in the meantime are
    // dropped silently.
    st->loop->post(Job{JobKind::Update, [weak_state, view, widget, dep, value] {
                         auto st2 = weak_state.lock();
                         if (!st2 || st2->torn_down.load()) return;
                         if (!st2->backend->alive(widget)) return;
                         try {
                           view.update(*st2->backend, widget, dep, value);
                         } catch (...) {
                           st2->report(std::current_exception());
                         }
                       }});
  });
  wired.push_back(sub);
  mount.subs.push_back(std::move(sub));
}

std::unique_ptr<Mount> build_tree(const std::shared_ptr<RenderRootState>& state,
                                  const View& view, WidgetHandle parent,
                                  std::vector<WidgetHandle>& created,
                                  std::vector<Subscription>& wired) {
  auto mount = std::make_unique<Mount>();
  mount->view = view;
  auto deps = view.dependencies();
  mount->widget = view.create(*state->backend, parent);
  created.push_back(mount->widget);
  for (const AnyObs& dep : deps) wire_dependency(state, *mount, dep, wired);
  for (const View& child : view.children()) {
    mount->children.push_back(build_tree(state, child, mount->widget, created, wired));
  }
  return mount;
}

void revoke_all(Mount& mount) {
  for (Subscription& sub : mount.subs) sub.unobserve();
  mount.subs.clear();
  for (auto& child : mount.children) revoke_all(*child);
}

void destroy_views_leaf_first(RenderRootState& state, Mount& mount) {
  for (auto& child : mount.children) destroy_views_leaf_first(state, *child);
  try {
    mount.view.destroy(*state.backend, mount.widget);
  } catch (...) {
    state.report(std::current_exception());
  }
}

std::size_t count_wiring(const Mount& mount) {
  std::size_t n = 0;
  for (const Subscription& sub : mount.subs) n += sub.active() ? 1 : 0;
  for (const auto& child : mount.children) n += count_wiring(*child);
  return n;
}

// Runs fn on the backend's event-loop thread when another thread is pumping;
// otherwise the calling thread acts as the loop thread.
void run_on_loop(EventLoop& loop, const std::function<void()>& fn) {
  if (!loop.pumping_elsewhere()) {
    fn();
    return;
  }
  std::promise<void> done;
  auto fut = done.get_future();
  loop.post(Job{JobKind::Control, [&] {
                  try {
                    fn();
                    done.set_value();
                  } catch (...) {
                    done.set_exception(std::current_exception());
                  }
                }});
  fut.get();
}

}  // namespace
}  // namespace detail

WidgetHandle RenderRoot::root_widget() const {
  return state_ ? state_->root_widget : WidgetHandle::none();
}

std::size_t RenderRoot::active_wiring() const {
  if (!state_ || !state_->root) return 0;
  return detail::count_wiring(*state_->root);
}

void RenderRoot::set_error_hook(std::function<void(std::exception_ptr)> hook) {
  if (!state_) return;
  {
    std::lock_guard lk(state_->hook_mu);
    state_->error_hook = hook;
  }
  // Callback jobs (button actions) run on the shared loop without a render
  // root in sight; their failures land on the same hook.
  state_->loop->set_error_handler(std::move(hook));
}

RenderRoot render(const View& view, Backend& backend) {
  auto state = std::make_shared<detail::RenderRootState>();
  state->backend = &backend;
  state->loop = backend.loop();

  detail::run_on_loop(*state->loop, [&] {
    std::vector<WidgetHandle> created;
    std::vector<Subscription> wired;
    try {
      state->root = detail::build_tree(state, view, WidgetHandle::none(), created, wired);
    } catch (...) {
      // No orphans: revoke what was wired and destroy what was created, in
      // reverse creation order.
      for (Subscription& sub : wired) sub.unobserve();
      for (auto it = created.rbegin(); it != created.rend(); ++it) {
        if (backend.alive(*it)) backend.destroy_widget(*it);
      }
      throw;
    }
    state->root_widget = state->root->widget;
    backend.show(state->root_widget, true);
  });

  RenderRoot root;
  root.state_ = std::move(state);
  return root;
}

std::size_t run_until_idle(RenderRoot& root) {
  if (!root.state_) return 0;
  return root.state_->loop->drain_until_idle();
}

void teardown(RenderRoot& root) {
  auto state = root.state_;
  if (!state) return;
  if (state->torn_down.exchange(true)) return;
  detail::run_on_loop(*state->loop, [&] {
    if (!state->root) return;
    detail::revoke_all(*state->root);
    detail::destroy_views_leaf_first(*state, *state->root);
    if (state->backend->alive(state->root_widget)) {
      state->backend->destroy_widget(state->root_widget);
    }
    state->root.reset();
  });
}

}  // namespace obsui
