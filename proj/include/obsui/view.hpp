#pragma once

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "obsui/observable.hpp"

// The view lifecycle contract: a View describes a widget subtree through four
// behaviors — dependencies (which observables it reads), create, update, and
// destroy. Views are reusable: one instance may be rendered many times, so
// anything a view needs to remember must be keyed by the rendered widget,
// never stored once per view. The renderer, not the view, walks children and
// drives the lifecycle.

namespace obsui {

class Backend;
class View;

enum class Orientation { Horizontal, Vertical };

// Opaque identifier for one live widget inside a backend's retained tree.
// Valid from create until destroy; never reused within a backend's lifetime.
struct WidgetHandle {
  std::uint64_t id = 0;
  std::uint64_t backend_tag = 0;

  static WidgetHandle none() { return {}; }
  bool is_none() const { return id == 0; }

  friend bool operator==(const WidgetHandle&, const WidgetHandle&) = default;
};

struct WidgetHandleHash {
  std::size_t operator()(const WidgetHandle& w) const {
    return std::hash<std::uint64_t>{}(w.id ^ (w.backend_tag << 24));
  }
};

class ViewImpl {
 public:
  virtual ~ViewImpl() = default;

  // Observables this view's own widget reads. Must return the same set (by
  // identity, duplicates removed) on every call for a given instance; it is
  // sampled once per render.
  virtual std::vector<AnyObs> dependencies() = 0;

  // Child views, rendered by the renderer into the widget returned by
  // create(). Order is presentation order.
  virtual std::vector<View> children();

  // Creates this view's widget under `parent` (none when rendered at the
  // root) and returns it.
  virtual WidgetHandle create(Backend& backend, WidgetHandle parent) = 0;

  // Applies one committed value of `changed` (always a member of
  // dependencies()) to one live widget previously returned by create().
  virtual void update(Backend& backend, WidgetHandle widget, const AnyObs& changed,
                      const std::any& value) = 0;

  // Last call for `widget`; backend widgets are destroyed by the renderer
  // afterwards. Used to release per-widget state.
  virtual void destroy(Backend& backend, WidgetHandle widget) = 0;
};

// Value-semantic handle to a shared view description.
class View {
 public:
  View() = default;
  explicit View(std::shared_ptr<ViewImpl> impl) : impl_(std::move(impl)) {}

  explicit operator bool() const { return impl_ != nullptr; }
  const std::shared_ptr<ViewImpl>& impl() const { return impl_; }

  std::vector<AnyObs> dependencies() const { return impl_->dependencies(); }
  std::vector<View> children() const { return impl_->children(); }
  WidgetHandle create(Backend& b, WidgetHandle parent) const { return impl_->create(b, parent); }
  void update(Backend& b, WidgetHandle w, const AnyObs& changed, const std::any& value) const {
    impl_->update(b, w, changed, value);
  }
  void destroy(Backend& b, WidgetHandle w) const { impl_->destroy(b, w); }

 private:
  std::shared_ptr<ViewImpl> impl_;
};

inline std::vector<View> ViewImpl::children() { return {}; }

// Removes duplicate observables (by identity), keeping first occurrence.
std::vector<AnyObs> dedup_dependencies(std::vector<AnyObs> deps);

using CreateFn = std::function<WidgetHandle(Backend&, WidgetHandle)>;
using UpdateFn = std::function<void(Backend&, WidgetHandle, const AnyObs&, const std::any&)>;
using DestroyFn = std::function<void(Backend&, WidgetHandle)>;

// Builds a leaf view from plain functions. Pass empty functions for no-op
// update/destroy. `deps` may be empty; it is deduplicated by identity.
View make_view(std::vector<AnyObs> deps, CreateFn create_fn, UpdateFn update_fn = {},
               DestroyFn destroy_fn = {});

// A text property that is either a constant or an observable string.
class StrProp {
 public:
  StrProp(const char* text) : value_(std::string(text)) {}
  StrProp(std::string text) : value_(std::move(text)) {}
  StrProp(Obs<std::string> text) : value_(std::move(text)) {}

  bool is_observable() const { return std::holds_alternative<Obs<std::string>>(value_); }

  std::string current() const {
    if (is_observable()) return std::get<Obs<std::string>>(value_).peek();
    return std::get<std::string>(value_);
  }

  // The dependency this property contributes, if any.
  std::optional<AnyObs> dependency() const {
    if (is_observable()) return std::get<Obs<std::string>>(value_).node();
    return std::nullopt;
  }

 private:
  std::variant<std::string, Obs<std::string>> value_;
};

// Description of a single backend widget for lift_widget.
struct WidgetSpec {
  std::string kind;                 // "window", "panel", "button" or "label"
  StrProp text{std::string{}};      // label text / button label / window title
  std::function<void()> on_click;   // buttons only
  Orientation orientation = Orientation::Horizontal;  // panels only
};

// Wraps exactly one backend widget in a View. Observable-valued properties
// become dependencies; constants do not. Throws UnsupportedWidgetError at
// create time if the backend lacks the widget kind.
View lift_widget(WidgetSpec spec);

}  // namespace obsui
