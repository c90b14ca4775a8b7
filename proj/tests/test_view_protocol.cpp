#include <doctest.h>

#include <string>
#include <vector>

#include "obsui/headless_backend.hpp"
#include "obsui/renderer.hpp"
#include "obsui/views.hpp"

using namespace obsui;

namespace {

// Per-widget lifecycle journal for protocol-conformance checks.
struct Journal {
  std::vector<std::string> events;

  View instrumented_label(Obs<std::string> content) {
    return make_view(
        {content.node()},
        [this, content](Backend& b, WidgetHandle parent) {
          WidgetHandle w = b.create_label(parent, content.peek());
          events.push_back("create #" + std::to_string(w.id));
          return w;
        },
        [this](Backend& b, WidgetHandle w, const AnyObs&, const std::any& value) {
          b.set_label(w, std::any_cast<const std::string&>(value));
          events.push_back("update #" + std::to_string(w.id));
        },
        [this](Backend&, WidgetHandle w) {
          events.push_back("destroy #" + std::to_string(w.id));
        });
  }
};

}  // namespace

TEST_CASE("make_view deduplicates dependencies by identity") {
  auto a = obs<std::string>("x");
  auto b = obs<std::string>("y");
  View v = make_view({a.node(), b.node(), a.node(), a.node()},
                     [](Backend& bk, WidgetHandle parent) {
                       return bk.create_label(parent, "");
                     });
  CHECK(v.dependencies().size() == 2);
  CHECK(v.dependencies()[0] == a.node());
  CHECK(v.dependencies()[1] == b.node());
}

TEST_CASE("a view with no dependencies never receives update") {
  HeadlessBackend backend;
  int updates = 0;
  View v = make_view(
      {},
      [](Backend& b, WidgetHandle parent) { return b.create_label(parent, "static"); },
      [&](Backend&, WidgetHandle, const AnyObs&, const std::any&) { ++updates; });
  RenderRoot root = render(v, backend);
  run_until_idle(root);
  CHECK(updates == 0);
  teardown(root);
}

TEST_CASE("lifecycle ordering per widget: one create, updates, one destroy") {
  HeadlessBackend backend;
  auto content = obs<std::string>("0");
  Journal journal;
  View v = journal.instrumented_label(content);

  RenderRoot root = render(v, backend);
  WidgetHandle w = root.root_widget();
  content.set("1");
  content.set("2");
  run_until_idle(root);
  teardown(root);
  content.set("3");
  run_until_idle(root);

  std::string id = "#" + std::to_string(w.id);
  CHECK(journal.events == std::vector<std::string>{"create " + id, "update " + id,
                                                   "update " + id, "destroy " + id});
}

TEST_CASE("update carries the changed dependency and its committed value") {
  HeadlessBackend backend;
  auto left = obs<std::string>("l");
  auto right = obs<std::string>("r");
  std::vector<std::pair<std::uint64_t, std::string>> seen;
  View v = make_view(
      {left.node(), right.node()},
      [](Backend& b, WidgetHandle parent) { return b.create_label(parent, ""); },
      [&](Backend&, WidgetHandle, const AnyObs& changed, const std::any& value) {
        seen.emplace_back(changed->id(), std::any_cast<const std::string&>(value));
      });
  RenderRoot root = render(v, backend);
  right.set("R1");
  left.set("L1");
  run_until_idle(root);
  REQUIRE(seen.size() == 2);
  CHECK(seen[0] == std::pair{right.id(), std::string("R1")});
  CHECK(seen[1] == std::pair{left.id(), std::string("L1")});
  teardown(root);
}

TEST_CASE("one view instance rendered twice stays isolated per widget") {
  HeadlessBackend backend;
  auto content = obs<std::string>("start");
  View v = text(content);

  RenderRoot r1 = render(v, backend);
  RenderRoot r2 = render(v, backend);
  CHECK(r1.root_widget() != r2.root_widget());

  content.set("next");
  run_until_idle(r1);

  // Both rendered widgets got identical per-widget call sequences.
  int set_labels = 0;
  for (const BackendOp& op : backend.call_log()) {
    if (op.kind == OpKind::SetLabel) {
      ++set_labels;
      CHECK((op.target == r1.root_widget() || op.target == r2.root_widget()));
      CHECK(op.args == std::vector<std::string>{quote_text("next")});
    }
  }
  CHECK(set_labels == 2);
  CHECK(backend.record(r1.root_widget()).label == "next");
  CHECK(backend.record(r2.root_widget()).label == "next");

  teardown(r1);
  content.set("after-teardown");
  run_until_idle(r2);
  CHECK(backend.record(r1.root_widget()).label == "next");  // r1 is gone
  CHECK(backend.record(r2.root_widget()).label == "after-teardown");
  teardown(r2);
}

TEST_CASE("lift_widget: constant properties contribute no dependencies") {
  View v = lift_widget({.kind = "label", .text = "hi"});
  CHECK(v.dependencies().empty());

  HeadlessBackend backend;
  RenderRoot root = render(v, backend);
  CHECK(backend.record(root.root_widget()).label == "hi");
  teardown(root);
}

TEST_CASE("lift_widget: observable properties become dependencies that update") {
  auto s = obs<std::string>("v0");
  View v = lift_widget({.kind = "label", .text = s});
  REQUIRE(v.dependencies().size() == 1);
  CHECK(v.dependencies()[0] == s.node());

  HeadlessBackend backend;
  RenderRoot r1 = render(v, backend);
  RenderRoot r2 = render(v, backend);
  s.set("v1");
  run_until_idle(r1);
  // Both rendered widgets received the set_label.
  CHECK(backend.record(r1.root_widget()).label == "v1");
  CHECK(backend.record(r2.root_widget()).label == "v1");
  teardown(r1);
  teardown(r2);
}

TEST_CASE("lift_widget: unsupported kinds fail at create time") {
  HeadlessBackend backend;
  View v = lift_widget({.kind = "canvas"});
  CHECK_THROWS_AS(render(v, backend), UnsupportedWidgetError);
}

TEST_CASE("lift_widget buttons carry their click handler") {
  HeadlessBackend backend;
  int clicks = 0;
  View v = lift_widget({.kind = "button", .text = "go", .on_click = [&] { ++clicks; }});
  RenderRoot root = render(v, backend);
  backend.simulate_click(root.root_widget());
  run_until_idle(root);
  CHECK(clicks == 1);
  teardown(root);
}
