#pragma once

#include <any>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "obsui/backend.hpp"
#include "obsui/view.hpp"

// The functional shell's standard library. Every view here follows data down,
// actions up: state arrives as observable inputs, user intent leaves through
// callbacks, and no standard view ever writes to its inputs (they may be
// derived observables).

namespace obsui {

// Runs the window close protocol: can-close check, on-close notification,
// hide. Safe to invoke from any event-loop job; idempotent once hidden.
class WindowControls {
 public:
  WindowControls() = default;

  void close() const;
  void set_can_close(std::function<bool()> predicate);
  void set_on_close(std::function<void()> fn);

 private:
  friend class WindowView;
  struct State {
    Backend* backend = nullptr;
    WidgetHandle window;
    std::function<bool()> can_close;
    std::function<void()> on_close;
  };
  std::shared_ptr<State> state_;
};

struct WindowSpec {
  StrProp title{std::string{}};
  // Escape hatch into the imperative core: runs exactly once per rendered
  // window, after creation and before show, with the raw handle and the
  // window's close controls.
  std::function<void(WidgetHandle, WindowControls&)> customizer;
  std::vector<View> children;
};

View window(WindowSpec spec);
View window(StrProp title, std::vector<View> children);

View hpanel(std::vector<View> children);
View vpanel(std::vector<View> children);

template <class... Vs>
View hpanel(Vs... views) {
  return hpanel(std::vector<View>{std::move(views)...});
}

template <class... Vs>
View vpanel(Vs... views) {
  return vpanel(std::vector<View>{std::move(views)...});
}

// A push button. The action receives no backend handles; the caller decides
// what the press means.
View button(StrProp label, std::function<void()> action);

// A text label; initial content is peeked at create time, commits of an
// observable content become set_label calls.
View text(StrProp content);

// Reusable counter: [-] count [+]. The view never writes `count`; button
// presses surface as action(sub1) / action(add1) and the caller commits.
using CounterStep = std::function<std::int64_t(std::int64_t)>;
using CounterAction = std::function<void(CounterStep)>;
View counter(Obs<std::int64_t> count, CounterAction action);

namespace detail {

template <class T>
struct TabsState {
  std::mutex mu;
  Obs<std::vector<T>> items;
  Obs<T> selected_item;  // internal root; committed on selection/items change
  std::size_t selected_index = 0;
  std::function<std::string(const T&)> tab_label;

  struct PerWidget {
    WidgetHandle header;
    std::vector<WidgetHandle> buttons;
  };
  std::unordered_map<WidgetHandle, PerWidget, WidgetHandleHash> mounts;

  TabsState(Obs<std::vector<T>> items_obs, Obs<T> current)
      : items(std::move(items_obs)), selected_item(std::move(current)) {}

  static void select(const std::shared_ptr<TabsState>& st, std::size_t index) {
    auto list = st->items.peek();
    if (index >= list.size()) return;
    {
      std::lock_guard lk(st->mu);
      st->selected_index = index;
    }
    st->selected_item.set(list[index]);
  }

  // Source commit handler; runs on the committing thread, touches no widgets.
  void on_items(const std::vector<T>& list) {
    std::size_t index;
    {
      std::lock_guard lk(mu);
      if (list.empty()) {
        selected_index = 0;
        return;
      }
      if (selected_index >= list.size()) selected_index = list.size() - 1;
      index = selected_index;
    }
    selected_item.set(list[index]);
  }

  void rebuild_header(Backend& b, PerWidget& mount, const std::vector<T>& list,
                      const std::shared_ptr<TabsState>& st) {
    for (WidgetHandle btn : mount.buttons) {
      if (b.alive(btn)) b.destroy_widget(btn);
    }
    mount.buttons.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::string label = tab_label ? tab_label(list[i]) : std::to_string(i + 1);
      mount.buttons.push_back(
          b.create_button(mount.header, label, [st, i] { select(st, i); }));
    }
  }
};

template <class T>
class TabsViewImpl final : public ViewImpl {
 public:
  TabsViewImpl(Obs<std::vector<T>> items, std::function<View(Obs<T>)> selected_view,
               std::function<std::string(const T&)> tab_label) {
    auto initial = items.peek();
    Obs<T> current = obs<T>(initial.empty() ? T{} : initial.front());
    state_ = std::make_shared<TabsState<T>>(std::move(items), std::move(current));
    state_->tab_label = std::move(tab_label);
    exposed_ = state_->selected_item.map([](const T& v) { return v; });
    child_ = selected_view(*exposed_);
    std::weak_ptr<TabsState<T>> weak = state_;
    items_sub_ = state_->items.observe([weak](const std::vector<T>& list) {
      if (auto st = weak.lock()) st->on_items(list);
    });
  }

  ~TabsViewImpl() override { items_sub_.unobserve(); }

  std::vector<AnyObs> dependencies() override { return {state_->items.node()}; }

  std::vector<View> children() override { return {child_}; }

  WidgetHandle create(Backend& b, WidgetHandle parent) override {
    auto list = state_->items.peek();
    if (list.empty()) throw EmptyItemsError();
    WidgetHandle root = b.create_panel(parent, Orientation::Vertical);
    WidgetHandle header = b.create_panel(root, Orientation::Horizontal);
    std::lock_guard lk(state_->mu);
    auto& mount = state_->mounts[root];
    mount.header = header;
    state_->rebuild_header(b, mount, list, state_);
    return root;
  }

  void update(Backend& b, WidgetHandle widget, const AnyObs&, const std::any& value) override {
    const auto& list = std::any_cast<const std::vector<T>&>(value);
    std::lock_guard lk(state_->mu);
    auto it = state_->mounts.find(widget);
    if (it == state_->mounts.end()) return;
    state_->rebuild_header(b, it->second, list, state_);
  }

  void destroy(Backend&, WidgetHandle widget) override {
    std::lock_guard lk(state_->mu);
    state_->mounts.erase(widget);
  }

 private:
  std::shared_ptr<TabsState<T>> state_;
  std::optional<Obs<T>> exposed_;
  View child_;
  Subscription items_sub_;
};

}  // namespace detail

// A tab container with local selection state (index, initially 0, clamped
// when the list shrinks). `selected_view` is called once with a derived
// observable of the currently selected item; both selection changes and items
// commits update it. `tab_label` renders header captions (defaults to
// positions "1", "2", ...). T must be copyable and default-constructible.
// Throws EmptyItemsError at create time when the items list is empty.
template <class T>
View tabs(Obs<std::vector<T>> items, std::function<View(Obs<T>)> selected_view,
          std::function<std::string(const T&)> tab_label = {}) {
  return View(std::make_shared<detail::TabsViewImpl<T>>(std::move(items),
                                                        std::move(selected_view),
                                                        std::move(tab_label)));
}

}  // namespace obsui
