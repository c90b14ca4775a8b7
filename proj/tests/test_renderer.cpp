#include <doctest.h>

#include <set>
#include <string>
#include <thread>
#include <vector>

#include "obsui/headless_backend.hpp"
#include "obsui/renderer.hpp"
#include "obsui/views.hpp"

using namespace obsui;

namespace {

int count_ops(const std::vector<BackendOp>& log, OpKind kind) {
  int n = 0;
  for (const BackendOp& op : log) {
    if (op.kind == kind) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("rendering a bare counter view produces the frozen golden log") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot root = render(v, backend);

  // Hand-walked from the render lifecycle: panel, minus, label("0"), plus,
  // then show of the root widget.
  CHECK(backend.format_call_log() ==
        "1 CreatePanel #1 - horizontal\n"
        "2 CreateButton #2 #1 \"-\"\n"
        "3 CreateLabel #3 #1 \"0\"\n"
        "4 CreateButton #4 #1 \"+\"\n"
        "5 Show #1 true\n");
  teardown(root);
}

TEST_CASE("a commit yields exactly one SetLabel per wired widget") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot root = render(v, backend);

  count.update([](const std::int64_t& v0) { return v0 + 1; });
  run_until_idle(root);
  auto log = backend.call_log();
  CHECK(count_ops(log, OpKind::SetLabel) == 1);
  CHECK(log.back().kind == OpKind::SetLabel);
  CHECK(log.back().args == std::vector<std::string>{quote_text("1")});
  teardown(root);
}

TEST_CASE("rendering the same view twice gives disjoint trees that both update") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot r1 = render(v, backend);
  RenderRoot r2 = render(v, backend);

  auto in_subtree = [&](WidgetHandle root, WidgetHandle w) {
    WidgetHandle cur = w;
    while (!cur.is_none()) {
      if (cur == root) return true;
      cur = backend.record(cur).parent;
    }
    return false;
  };
  for (const BackendOp& op : backend.call_log()) {
    if (op.kind == OpKind::CreatePanel || op.kind == OpKind::CreateButton ||
        op.kind == OpKind::CreateLabel) {
      CHECK(in_subtree(r1.root_widget(), op.target) !=
            in_subtree(r2.root_widget(), op.target));
    }
  }

  count.update([](const std::int64_t& v0) { return v0 + 1; });
  run_until_idle(r1);
  CHECK(count_ops(backend.call_log(), OpKind::SetLabel) == 2);
  teardown(r1);
  teardown(r2);
}

TEST_CASE("run_until_idle returns the number of jobs executed") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot root = render(v, backend);
  run_until_idle(root);

  CHECK(run_until_idle(root) == 0);  // empty queue

  // One click enqueues the callback job, whose action commits and enqueues
  // one update job: two jobs in total.
  WidgetHandle plus = backend.live_children(root.root_widget())[2];
  backend.simulate_click(plus);
  CHECK(run_until_idle(root) == 2);
  teardown(root);
}

TEST_CASE("a click storm lands every increment in order") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(3);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot root = render(v, backend);
  WidgetHandle plus = backend.live_children(root.root_widget())[2];
  WidgetHandle label = backend.live_children(root.root_widget())[1];

  constexpr int kClicks = 25;
  for (int i = 0; i < kClicks; ++i) backend.simulate_click(plus);
  run_until_idle(root);
  CHECK(backend.record(label).label == std::to_string(3 + kClicks));
  teardown(root);
}

TEST_CASE("teardown balances creates, then goes quiet") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [count](CounterStep f) mutable { count.update(f); });
  RenderRoot root = render(v, backend);
  run_until_idle(root);

  teardown(root);
  auto log = backend.call_log();
  std::multiset<std::uint64_t> created;
  std::multiset<std::uint64_t> destroyed;
  for (const BackendOp& op : log) {
    switch (op.kind) {
      case OpKind::CreateWindow:
      case OpKind::CreatePanel:
      case OpKind::CreateButton:
      case OpKind::CreateLabel:
        created.insert(op.target.id);
        break;
      case OpKind::Destroy:
        destroyed.insert(op.target.id);
        break;
      default:
        break;
    }
  }
  CHECK(created == destroyed);
  CHECK(root.active_wiring() == 0);

  // Idempotent, and commits after teardown produce zero backend ops.
  teardown(root);
  count.update([](const std::int64_t& v0) { return v0 + 1; });
  run_until_idle(root);
  CHECK(backend.call_log().size() == log.size());
}

TEST_CASE("update jobs for widgets destroyed mid-flight are dropped") {
  HeadlessBackend backend;
  auto content = obs<std::string>("a");
  View v = text(content);
  RenderRoot root = render(v, backend);

  content.set("b");                        // queued update
  backend.destroy_widget(root.root_widget());  // widget dies first
  auto before = backend.call_log().size();
  run_until_idle(root);
  CHECK(backend.call_log().size() == before);  // dropped silently
  teardown(root);
}

TEST_CASE("create-time failures destroy already-created widgets") {
  HeadlessBackend backend;
  auto live = obs<std::string>("wired before the failure");
  auto subs_before = active_subscription_count();
  View failing = make_view({}, [](Backend&, WidgetHandle) -> WidgetHandle {
    throw std::runtime_error("create exploded");
  });
  View tree = vpanel(text("one"), text(live), failing);
  CHECK_THROWS_AS(render(tree, backend), std::runtime_error);
  // No orphans: everything created before the failure was destroyed and
  // every wired observer was revoked.
  for (const BackendOp& op : backend.call_log()) {
    if (op.kind == OpKind::CreatePanel || op.kind == OpKind::CreateLabel) {
      CHECK_FALSE(backend.alive(op.target));
    }
  }
  CHECK(count_ops(backend.call_log(), OpKind::Show) == 0);
  CHECK(active_subscription_count() == subs_before);
}

TEST_CASE("a dropped root without teardown still releases its wiring") {
  HeadlessBackend backend;
  auto content = obs<std::string>("x");
  auto subs_before = active_subscription_count();
  {
    RenderRoot root = render(text(content), backend);
    run_until_idle(root);
    CHECK(active_subscription_count() == subs_before + 1);
  }
  CHECK(active_subscription_count() == subs_before);  // widgets stay, wiring goes
}

TEST_CASE("the error hook sees job failures and the pump continues") {
  HeadlessBackend backend;
  auto count = obs<std::int64_t>(0);
  View v = counter(count, [](CounterStep) { throw std::runtime_error("action failed"); });
  RenderRoot root = render(v, backend);

  std::vector<std::string> reported;
  root.set_error_hook([&](std::exception_ptr err) {
    try {
      std::rethrow_exception(err);
    } catch (const std::exception& e) {
      reported.push_back(e.what());
    }
  });

  WidgetHandle plus = backend.live_children(root.root_widget())[2];
  WidgetHandle minus = backend.live_children(root.root_widget())[0];
  backend.simulate_click(plus);
  backend.simulate_click(minus);
  run_until_idle(root);
  CHECK(reported == std::vector<std::string>{"action failed", "action failed"});
  teardown(root);
}

TEST_CASE("commits from any thread marshal onto the pumping thread") {
  HeadlessBackend backend;
  auto content = obs<std::string>("0");
  View v = text(content);
  RenderRoot root = render(v, backend);

  std::thread committer([&] {
    for (int i = 1; i <= 10; ++i) content.set(std::to_string(i));
  });
  committer.join();
  run_until_idle(root);  // applied here, on the pumping thread
  CHECK(backend.record(root.root_widget()).label == "10");

  // Per-observable ordering: SetLabel values appear in commit order.
  std::vector<std::string> values;
  for (const BackendOp& op : backend.call_log()) {
    if (op.kind == OpKind::SetLabel) values.push_back(op.args[0]);
  }
  std::vector<std::string> expected;
  for (int i = 1; i <= 10; ++i) expected.push_back(quote_text(std::to_string(i)));
  CHECK(values == expected);
  teardown(root);
}

TEST_CASE("per-observable commit order survives interleaving") {
  HeadlessBackend backend;
  auto a = obs<std::string>("a0");
  auto bb = obs<std::string>("b0");
  View v = vpanel(text(a), text(bb));
  RenderRoot root = render(v, backend);
  auto kids = backend.live_children(root.root_widget());
  WidgetHandle label_a = kids[0];
  WidgetHandle label_b = kids[1];

  for (int i = 1; i <= 20; ++i) {
    a.set("a" + std::to_string(i));
    bb.set("b" + std::to_string(i));
  }
  run_until_idle(root);

  std::vector<std::string> got_a;
  std::vector<std::string> got_b;
  for (const BackendOp& op : backend.call_log()) {
    if (op.kind != OpKind::SetLabel) continue;
    if (op.target == label_a) got_a.push_back(op.args[0]);
    if (op.target == label_b) got_b.push_back(op.args[0]);
  }
  std::vector<std::string> want_a;
  std::vector<std::string> want_b;
  for (int i = 1; i <= 20; ++i) {
    want_a.push_back(quote_text("a" + std::to_string(i)));
    want_b.push_back(quote_text("b" + std::to_string(i)));
  }
  CHECK(got_a == want_a);
  CHECK(got_b == want_b);
  teardown(root);
}
