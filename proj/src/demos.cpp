#include "obsui/demos.hpp"

#include <memory>

#include "obsui/errors.hpp"
#include "obsui/views.hpp"

namespace obsui {
namespace {

CommitFn int_target(Obs<std::int64_t> o) {
  return [o](const CommitOp& op) mutable {
    switch (op.kind) {
      case CommitOp::Kind::Add1:
        o.update([](const std::int64_t& v) { return v + 1; });
        break;
      case CommitOp::Kind::Sub1:
        o.update([](const std::int64_t& v) { return v - 1; });
        break;
      case CommitOp::Kind::Set:
        o.set(op.value);
        break;
      case CommitOp::Kind::SetText:
        throw ScriptError("set-text applied to an integer observable");
    }
  };
}

CommitFn env_var_target(Obs<Env> env, std::string name) {
  return [env, name](const CommitOp& op) mutable {
    env.update([&](const Env& cur) {
      std::int64_t old = env_lookup(cur, name).value_or(0);
      switch (op.kind) {
        case CommitOp::Kind::Add1: return env_set(cur, name, old + 1);
        case CommitOp::Kind::Sub1: return env_set(cur, name, old - 1);
        case CommitOp::Kind::Set: return env_set(cur, name, op.value);
        case CommitOp::Kind::SetText:
          throw ScriptError("set-text applied to an env variable");
      }
      return cur;
    });
  };
}

std::string hp_text(const Monster& m, const Env& env) {
  return std::to_string(eval_formula(m.hp_formula, env));
}

// Label that recomputes from two observables (the monster and the shared
// env); built straight on the view protocol since it has two dependencies.
View hp_label(Obs<Monster> m, Obs<Env> env) {
  return make_view(
      {m.node(), env.node()},
      [m, env](Backend& b, WidgetHandle parent) {
        return b.create_label(parent, hp_text(m.peek(), env.peek()));
      },
      [m, env](Backend& b, WidgetHandle w, const AnyObs&, const std::any&) {
        b.set_label(w, hp_text(m.peek(), env.peek()));
      });
}

View monster_view(Obs<Monster> m, Obs<Env> env,
                  std::function<void(std::string, CounterStep)> adjust_hp) {
  auto name = m.map([](const Monster& x) { return x.name; });
  auto hp_current = m.map([](const Monster& x) { return x.hp_current; });
  CounterAction action = [m, adjust_hp](CounterStep step) {
    adjust_hp(m.peek().name, std::move(step));
  };
  return vpanel(text(name), hp_label(m, env), counter(hp_current, std::move(action)));
}

View group_view(Obs<std::vector<Monster>> group, Obs<Env> env) {
  // Actions bubble up from the counter through the monster view to here,
  // where the group observable actually gets committed.
  auto adjust_hp = [group](std::string name, CounterStep step) mutable {
    group.update([&](const std::vector<Monster>& monsters) {
      std::vector<Monster> next = monsters;
      for (Monster& m : next) {
        if (m.name == name) m.hp_current = step(m.hp_current);
      }
      return next;
    });
  };
  return tabs<Monster>(
      group,
      [env, adjust_hp](Obs<Monster> m) { return monster_view(m, env, adjust_hp); },
      [](const Monster& m) { return m.name; });
}

}  // namespace

DemoApp make_counter_demo() {
  auto count = obs<std::int64_t>(0);
  DemoApp app;
  app.root = window("Counter", {counter(count, [count](CounterStep step) mutable {
                                  count.update(step);
                                })});
  app.commits["count"] = int_target(count);
  return app;
}

DemoApp make_counters_demo() {
  auto c1 = obs<std::int64_t>(0);
  auto c2 = obs<std::int64_t>(5);
  DemoApp app;
  app.root = window("Counters",
                    {counter(c1, [c1](CounterStep step) mutable { c1.update(step); }),
                     counter(c2, [c2](CounterStep step) mutable { c2.update(step); })});
  app.commits["c1"] = int_target(c1);
  app.commits["c2"] = int_target(c2);
  return app;
}

DemoApp make_goodbye_demo() {
  // The customizer captures the close protocol; the button's action reaches
  // the window's imperative close path without the view tree ever touching
  // backend handles.
  auto close_fn = std::make_shared<std::function<void()>>();
  WindowSpec spec;
  spec.title = "Goodbye World";
  spec.customizer = [close_fn](WidgetHandle, WindowControls& controls) {
    WindowControls captured = controls;
    *close_fn = [captured] { captured.close(); };
  };
  spec.children = {button("Click Me!", [close_fn] {
    if (*close_fn) (*close_fn)();
  })};
  DemoApp app;
  app.root = window(std::move(spec));
  return app;
}

DemoApp make_tracker_demo() {
  auto env = obs<Env>(Env{{"L", 2}, {"S", 1}});
  auto group1 = obs<std::vector<Monster>>(std::vector<Monster>{
      {"Ruffian", "2*L+1", 5},
      {"Archer", "L+S", 3},
      {"Shaman", "3*S", 3},
  });
  auto group2 = obs<std::vector<Monster>>(std::vector<Monster>{
      {"Golem", "L*S+2", 4},
      {"Wisp", "S", 1},
      {"Brute", "2*(L+S)", 6},
  });

  auto env_text = [](std::string name) {
    return [name](const Env& e) {
      return name + "=" + std::to_string(env_lookup(e, name).value_or(0));
    };
  };
  // Derivation order pins observer registration order (and so log order).
  auto l_text = env.map(env_text("L"));
  auto s_text = env.map(env_text("S"));

  DemoApp app;
  app.root = window("Tracker", {
                                   hpanel(text(l_text), text(s_text)),
                                   group_view(group1, env),
                                   group_view(group2, env),
                               });
  app.commits["L"] = env_var_target(env, "L");
  app.commits["S"] = env_var_target(env, "S");
  return app;
}

DemoApp make_demo(std::string_view name) {
  if (name == "counter") return make_counter_demo();
  if (name == "counters") return make_counters_demo();
  if (name == "goodbye") return make_goodbye_demo();
  if (name == "tracker") return make_tracker_demo();
  throw Error("unknown demo '" + std::string(name) + "'");
}

std::vector<std::string> demo_names() { return {"counter", "counters", "goodbye", "tracker"}; }

}  // namespace obsui
