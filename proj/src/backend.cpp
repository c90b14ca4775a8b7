#include "obsui/backend.hpp"

#include <atomic>

#include "obsui/errors.hpp"

namespace obsui {
namespace {

std::atomic<std::uint64_t> g_backend_tag{0};

std::string handle_token(WidgetHandle w) {
  if (w.is_none()) return "-";
  return "#" + std::to_string(w.id);
}

}  // namespace

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::CreateWindow: return "CreateWindow";
    case OpKind::CreatePanel: return "CreatePanel";
    case OpKind::CreateButton: return "CreateButton";
    case OpKind::CreateLabel: return "CreateLabel";
    case OpKind::SetLabel: return "SetLabel";
    case OpKind::Show: return "Show";
    case OpKind::Destroy: return "Destroy";
    case OpKind::InvokeCallback: return "InvokeCallback";
  }
  return "?";
}

std::string_view to_string(WidgetKind kind) {
  switch (kind) {
    case WidgetKind::Window: return "window";
    case WidgetKind::Panel: return "panel";
    case WidgetKind::Button: return "button";
    case WidgetKind::Label: return "label";
  }
  return "?";
}

std::optional<OpKind> op_kind_from(std::string_view name) {
  for (OpKind k : {OpKind::CreateWindow, OpKind::CreatePanel, OpKind::CreateButton,
                   OpKind::CreateLabel, OpKind::SetLabel, OpKind::Show, OpKind::Destroy,
                   OpKind::InvokeCallback}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string quote_text(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string format_op(const BackendOp& op) {
  std::string line = std::to_string(op.seq);
  line += ' ';
  line += to_string(op.kind);
  line += ' ';
  line += handle_token(op.target);
  for (const std::string& arg : op.args) {
    line += ' ';
    line += arg;
  }
  return line;
}

std::string format_log(const std::vector<BackendOp>& log) {
  std::string out;
  for (const BackendOp& op : log) {
    out += format_op(op);
    out += '\n';
  }
  return out;
}

BackendCore::BackendCore()
    : tag_(++g_backend_tag),
      loop_(std::make_shared<EventLoop>()),
      live_(std::make_shared<std::atomic<bool>>(true)) {}

BackendCore::~BackendCore() { live_->store(false); }

BackendCore::Widget& BackendCore::require(WidgetHandle w) {
  auto it = widgets_.find(w.id);
  if (w.is_none() || w.backend_tag != tag_ || it == widgets_.end()) throw UnknownHandleError();
  return it->second;
}

const BackendCore::Widget& BackendCore::require(WidgetHandle w) const {
  auto it = widgets_.find(w.id);
  if (w.is_none() || w.backend_tag != tag_ || it == widgets_.end()) throw UnknownHandleError();
  return it->second;
}

BackendCore::Widget& BackendCore::require_alive(WidgetHandle w) {
  Widget& widget = require(w);
  if (!widget.rec.alive) throw DeadWidgetError();
  return widget;
}

WidgetHandle BackendCore::new_widget(WidgetKind kind, WidgetHandle parent) {
  WidgetHandle handle{++next_id_, tag_};
  Widget widget;
  widget.rec.handle = handle;
  widget.rec.kind = kind;
  widget.rec.parent = parent;
  // Windows start hidden until shown; other widgets are visible with their
  // parent chain.
  widget.rec.visible = kind != WidgetKind::Window;
  widgets_.emplace(handle.id, std::move(widget));
  if (parent.is_none()) {
    roots_.push_back(handle);
  } else {
    widgets_.at(parent.id).rec.children.push_back(handle);
  }
  return handle;
}

void BackendCore::append(OpKind kind, WidgetHandle target, std::vector<std::string> args) {
  log_.push_back(BackendOp{++next_seq_, kind, target, std::move(args)});
}

WidgetHandle BackendCore::create_window(const std::string& title) {
  WidgetHandle h;
  {
    std::lock_guard lk(mu_);
    h = new_widget(WidgetKind::Window, WidgetHandle::none());
    widgets_.at(h.id).rec.label = title;
    append(OpKind::CreateWindow, h, {quote_text(title)});
  }
  on_mutated();
  return h;
}

WidgetHandle BackendCore::create_panel(WidgetHandle parent, Orientation orientation) {
  WidgetHandle h;
  {
    std::lock_guard lk(mu_);
    if (!parent.is_none() && !require(parent).rec.alive) throw DeadParentError();
    h = new_widget(WidgetKind::Panel, parent);
    widgets_.at(h.id).rec.orientation = orientation;
    append(OpKind::CreatePanel, h,
           {handle_token(parent),
            orientation == Orientation::Horizontal ? "horizontal" : "vertical"});
  }
  on_mutated();
  return h;
}

WidgetHandle BackendCore::create_button(WidgetHandle parent, const std::string& label,
                                        std::function<void()> on_click) {
  WidgetHandle h;
  {
    std::lock_guard lk(mu_);
    if (!parent.is_none() && !require(parent).rec.alive) throw DeadParentError();
    h = new_widget(WidgetKind::Button, parent);
    Widget& widget = widgets_.at(h.id);
    widget.rec.label = label;
    widget.on_click = std::move(on_click);
    append(OpKind::CreateButton, h, {handle_token(parent), quote_text(label)});
  }
  on_mutated();
  return h;
}

WidgetHandle BackendCore::create_label(WidgetHandle parent, const std::string& text) {
  WidgetHandle h;
  {
    std::lock_guard lk(mu_);
    if (!parent.is_none() && !require(parent).rec.alive) throw DeadParentError();
    h = new_widget(WidgetKind::Label, parent);
    widgets_.at(h.id).rec.label = text;
    append(OpKind::CreateLabel, h, {handle_token(parent), quote_text(text)});
  }
  on_mutated();
  return h;
}

void BackendCore::set_label(WidgetHandle w, const std::string& text) {
  {
    std::lock_guard lk(mu_);
    Widget& widget = require_alive(w);
    widget.rec.label = text;
    append(OpKind::SetLabel, w, {quote_text(text)});
  }
  on_mutated();
}

void BackendCore::show(WidgetHandle w, bool visible) {
  {
    std::lock_guard lk(mu_);
    Widget& widget = require_alive(w);
    widget.rec.visible = visible;
    append(OpKind::Show, w, {visible ? "true" : "false"});
  }
  on_mutated();
}

void BackendCore::destroy_recursive(Widget& widget) {
  for (WidgetHandle child : widget.rec.children) {
    Widget& c = widgets_.at(child.id);
    if (c.rec.alive) destroy_recursive(c);
  }
  widget.rec.alive = false;
  widget.rec.visible = false;
  widget.on_click = nullptr;
  widget.close_handler = nullptr;
  append(OpKind::Destroy, widget.rec.handle, {});
}

void BackendCore::destroy_widget(WidgetHandle w) {
  {
    std::lock_guard lk(mu_);
    Widget& widget = require_alive(w);
    destroy_recursive(widget);
  }
  on_mutated();
}

bool BackendCore::supports(std::string_view widget_kind) const {
  return widget_kind == "window" || widget_kind == "panel" || widget_kind == "button" ||
         widget_kind == "label";
}

void BackendCore::note_callback(WidgetHandle w, std::string_view tag) {
  std::lock_guard lk(mu_);
  require(w);
  std::vector<std::string> args;
  if (!tag.empty()) args.push_back(quote_text(tag));
  append(OpKind::InvokeCallback, w, std::move(args));
}

void BackendCore::set_close_handler(WidgetHandle window, std::function<void()> handler) {
  std::lock_guard lk(mu_);
  require_alive(window).close_handler = std::move(handler);
}

WidgetRecord BackendCore::record(WidgetHandle w) const {
  std::lock_guard lk(mu_);
  return require(w).rec;
}

bool BackendCore::alive(WidgetHandle w) const {
  std::lock_guard lk(mu_);
  auto it = widgets_.find(w.id);
  return !w.is_none() && w.backend_tag == tag_ && it != widgets_.end() && it->second.rec.alive;
}

void BackendCore::simulate_click(WidgetHandle w) {
  {
    std::lock_guard lk(mu_);
    const Widget& widget = require(w);
    if (!widget.rec.alive) throw DeadWidgetError();
    if (widget.rec.kind != WidgetKind::Button) throw NotAButtonError();
  }
  loop_->post(Job{JobKind::Callback, [this, w, live = live_] {
                    if (!live->load()) return;
                    std::function<void()> cb;
                    {
                      std::lock_guard lk(mu_);
                      auto it = widgets_.find(w.id);
                      if (it == widgets_.end() || !it->second.rec.alive) return;
                      cb = it->second.on_click;
                      append(OpKind::InvokeCallback, w, {});
                    }
                    if (cb) cb();
                  }});
}

void BackendCore::request_close(WidgetHandle window) {
  {
    std::lock_guard lk(mu_);
    const Widget& widget = require(window);
    if (!widget.rec.alive) throw DeadWidgetError();
  }
  loop_->post(Job{JobKind::Callback, [this, window, live = live_] {
                    if (!live->load()) return;
                    std::function<void()> handler;
                    {
                      std::lock_guard lk(mu_);
                      auto it = widgets_.find(window.id);
                      if (it == widgets_.end() || !it->second.rec.alive) return;
                      handler = it->second.close_handler;
                    }
                    if (handler) {
                      handler();
                    } else {
                      show(window, false);
                    }
                  }});
}

std::vector<BackendOp> BackendCore::call_log() const {
  std::lock_guard lk(mu_);
  return log_;
}

std::string BackendCore::format_call_log() const { return format_log(call_log()); }

std::vector<WidgetHandle> BackendCore::live_children(WidgetHandle w) const {
  std::lock_guard lk(mu_);
  const Widget& widget = require(w);
  std::vector<WidgetHandle> out;
  for (WidgetHandle child : widget.rec.children) {
    auto it = widgets_.find(child.id);
    if (it != widgets_.end() && it->second.rec.alive) out.push_back(child);
  }
  return out;
}

std::vector<WidgetHandle> BackendCore::live_roots() const {
  std::lock_guard lk(mu_);
  std::vector<WidgetHandle> out;
  for (WidgetHandle root : roots_) {
    auto it = widgets_.find(root.id);
    if (it != widgets_.end() && it->second.rec.alive) out.push_back(root);
  }
  return out;
}

}  // namespace obsui
