#pragma once

#include "obsui/backend.hpp"

namespace obsui {

// Recording backend for tests and scripted runs: no presentation at all, just
// the retained tree and the deterministic call log. Identical (program, event
// script) pairs produce byte-identical logs.
class HeadlessBackend final : public BackendCore {
 public:
  HeadlessBackend() = default;
};

}  // namespace obsui
