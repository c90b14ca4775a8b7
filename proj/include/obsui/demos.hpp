#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "obsui/formula.hpp"
#include "obsui/script.hpp"
#include "obsui/view.hpp"

// The bundled demo programs used by the CLI and the acceptance suite.

namespace obsui {

struct Monster {
  std::string name;
  std::string hp_formula;  // arithmetic over the shared env variables
  std::int64_t hp_current = 0;
};

struct DemoApp {
  View root;
  CommitTargets commits;  // named targets for scripted `commit` commands
};

// A window holding one counter over @count = 0. Commit target: "count".
DemoApp make_counter_demo();

// Two counters over @c1 = 0 and @c2 = 5, sharing one counter view function.
// Commit targets: "c1", "c2".
DemoApp make_counters_demo();

// A window whose button closes it through the window customizer hook.
DemoApp make_goodbye_demo();

// Two monster groups in tab containers, one shared @env threaded through
// every view; hp labels show each monster's formula evaluated against the
// current env. Commit targets: env variables "L" and "S".
DemoApp make_tracker_demo();

// Names: counter, counters, goodbye, tracker. Throws Error on unknown names.
DemoApp make_demo(std::string_view name);
std::vector<std::string> demo_names();

}  // namespace obsui
