#include "obsui/views.hpp"

#include <utility>

#include "obsui/errors.hpp"

namespace obsui {
namespace {

// Leaf view over a single text-bearing widget: create peeks the property,
// updates forward the committed value to set_label.
class TextLeafView final : public ViewImpl {
 public:
  enum class Kind { Label, Button };

  TextLeafView(Kind kind, StrProp text, std::function<void()> action)
      : kind_(kind), text_(std::move(text)), action_(std::move(action)) {}

  std::vector<AnyObs> dependencies() override {
    if (auto dep = text_.dependency()) return {*dep};
    return {};
  }

  WidgetHandle create(Backend& b, WidgetHandle parent) override {
    if (kind_ == Kind::Button) return b.create_button(parent, text_.current(), action_);
    return b.create_label(parent, text_.current());
  }

  void update(Backend& b, WidgetHandle w, const AnyObs&, const std::any& value) override {
    b.set_label(w, std::any_cast<const std::string&>(value));
  }

  void destroy(Backend&, WidgetHandle) override {}

 private:
  Kind kind_;
  StrProp text_;
  std::function<void()> action_;
};

class PanelView final : public ViewImpl {
 public:
  PanelView(Orientation orientation, std::vector<View> children)
      : orientation_(orientation), children_(std::move(children)) {}

  std::vector<AnyObs> dependencies() override { return {}; }
  std::vector<View> children() override { return children_; }

  WidgetHandle create(Backend& b, WidgetHandle parent) override {
    return b.create_panel(parent, orientation_);
  }

  void update(Backend&, WidgetHandle, const AnyObs&, const std::any&) override {}
  void destroy(Backend&, WidgetHandle) override {}

 private:
  Orientation orientation_;
  std::vector<View> children_;
};

class FunctionView final : public ViewImpl {
 public:
  FunctionView(std::vector<AnyObs> deps, CreateFn create_fn, UpdateFn update_fn,
               DestroyFn destroy_fn)
      : deps_(std::move(deps)),
        create_(std::move(create_fn)),
        update_(std::move(update_fn)),
        destroy_(std::move(destroy_fn)) {}

  std::vector<AnyObs> dependencies() override { return deps_; }

  WidgetHandle create(Backend& b, WidgetHandle parent) override { return create_(b, parent); }

  void update(Backend& b, WidgetHandle w, const AnyObs& changed, const std::any& value) override {
    if (update_) update_(b, w, changed, value);
  }

  void destroy(Backend& b, WidgetHandle w) override {
    if (destroy_) destroy_(b, w);
  }

 private:
  std::vector<AnyObs> deps_;
  CreateFn create_;
  UpdateFn update_;
  DestroyFn destroy_;
};

class LiftedWidgetView final : public ViewImpl {
 public:
  explicit LiftedWidgetView(WidgetSpec spec) : spec_(std::move(spec)) {}

  std::vector<AnyObs> dependencies() override {
    if (auto dep = spec_.text.dependency()) return {*dep};
    return {};
  }

  WidgetHandle create(Backend& b, WidgetHandle parent) override {
    if (!b.supports(spec_.kind)) throw UnsupportedWidgetError(spec_.kind);
    if (spec_.kind == "label") return b.create_label(parent, spec_.text.current());
    if (spec_.kind == "button") return b.create_button(parent, spec_.text.current(), spec_.on_click);
    if (spec_.kind == "panel") return b.create_panel(parent, spec_.orientation);
    return b.create_window(spec_.text.current());
  }

  void update(Backend& b, WidgetHandle w, const AnyObs&, const std::any& value) override {
    b.set_label(w, std::any_cast<const std::string&>(value));
  }

  void destroy(Backend&, WidgetHandle) override {}

 private:
  WidgetSpec spec_;
};

}  // namespace

std::vector<AnyObs> dedup_dependencies(std::vector<AnyObs> deps) {
  std::vector<AnyObs> out;
  for (AnyObs& dep : deps) {
    bool seen = false;
    for (const AnyObs& have : out) {
      if (have == dep) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(std::move(dep));
  }
  return out;
}

View make_view(std::vector<AnyObs> deps, CreateFn create_fn, UpdateFn update_fn,
               DestroyFn destroy_fn) {
  return View(std::make_shared<FunctionView>(dedup_dependencies(std::move(deps)),
                                             std::move(create_fn), std::move(update_fn),
                                             std::move(destroy_fn)));
}

View lift_widget(WidgetSpec spec) {
  return View(std::make_shared<LiftedWidgetView>(std::move(spec)));
}

// WindowControls --------------------------------------------------------------

void WindowControls::close() const {
  auto st = state_;
  if (!st || !st->backend) return;
  Backend& b = *st->backend;
  if (!b.alive(st->window) || !b.record(st->window).visible) return;
  b.note_callback(st->window, "can-close");
  bool allowed = st->can_close ? st->can_close() : true;
  if (!allowed) return;
  b.note_callback(st->window, "on-close");
  if (st->on_close) st->on_close();
  b.show(st->window, false);
}

void WindowControls::set_can_close(std::function<bool()> predicate) {
  if (state_) state_->can_close = std::move(predicate);
}

void WindowControls::set_on_close(std::function<void()> fn) {
  if (state_) state_->on_close = std::move(fn);
}

// window ----------------------------------------------------------------------

class WindowView final : public ViewImpl {
 public:
  explicit WindowView(WindowSpec spec) : spec_(std::move(spec)) {}

  std::vector<AnyObs> dependencies() override {
    if (auto dep = spec_.title.dependency()) return {*dep};
    return {};
  }

  std::vector<View> children() override { return spec_.children; }

  WidgetHandle create(Backend& b, WidgetHandle parent) override {
    WidgetHandle w = b.create_window(spec_.title.current());
    (void)parent;  // windows are top-level
    WindowControls controls;
    controls.state_ = std::make_shared<WindowControls::State>();
    controls.state_->backend = &b;
    controls.state_->window = w;
    b.set_close_handler(w, [controls] { controls.close(); });
    if (spec_.customizer) spec_.customizer(w, controls);
    return w;
  }

  void update(Backend& b, WidgetHandle w, const AnyObs&, const std::any& value) override {
    b.set_label(w, std::any_cast<const std::string&>(value));
  }

  void destroy(Backend&, WidgetHandle) override {}

 private:
  WindowSpec spec_;
};

View window(WindowSpec spec) { return View(std::make_shared<WindowView>(std::move(spec))); }

View window(StrProp title, std::vector<View> children) {
  WindowSpec spec;
  spec.title = std::move(title);
  spec.children = std::move(children);
  return window(std::move(spec));
}

// panels / button / text ------------------------------------------------------

View hpanel(std::vector<View> children) {
  return View(std::make_shared<PanelView>(Orientation::Horizontal, std::move(children)));
}

View vpanel(std::vector<View> children) {
  return View(std::make_shared<PanelView>(Orientation::Vertical, std::move(children)));
}

View button(StrProp label, std::function<void()> action) {
  return View(std::make_shared<TextLeafView>(TextLeafView::Kind::Button, std::move(label),
                                             std::move(action)));
}

View text(StrProp content) {
  return View(std::make_shared<TextLeafView>(TextLeafView::Kind::Label, std::move(content),
                                             nullptr));
}

// counter ---------------------------------------------------------------------

View counter(Obs<std::int64_t> count, CounterAction action) {
  auto as_text = count.map([](const std::int64_t& v) { return std::to_string(v); });
  return hpanel(
      button("-", [action] { action([](std::int64_t v) { return v - 1; }); }),
      text(as_text),
      button("+", [action] { action([](std::int64_t v) { return v + 1; }); }));
}

}  // namespace obsui
