#pragma once

#include <stdexcept>
#include <string>

namespace obsui {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// obs core ------------------------------------------------------------------

struct DerivedUpdateError : Error {
  DerivedUpdateError() : Error("cannot directly update a derived observable") {}
};

struct PropagationDepthError : Error {
  explicit PropagationDepthError(int limit)
      : Error("observable propagation exceeded depth limit " + std::to_string(limit)) {}
};

// backend -------------------------------------------------------------------

struct UnknownHandleError : Error {
  UnknownHandleError() : Error("widget handle does not belong to this backend") {}
};

struct DeadParentError : Error {
  DeadParentError() : Error("parent widget is not alive") {}
};

struct DeadWidgetError : Error {
  DeadWidgetError() : Error("widget is not alive") {}
};

struct NotAButtonError : Error {
  NotAButtonError() : Error("widget is not a button") {}
};

struct TerminalUnavailableError : Error {
  TerminalUnavailableError() : Error("no interactive terminal attached") {}
};

// views ---------------------------------------------------------------------

struct UnsupportedWidgetError : Error {
  explicit UnsupportedWidgetError(const std::string& kind)
      : Error("backend does not support widget kind '" + kind + "'") {}
};

struct EmptyItemsError : Error {
  EmptyItemsError() : Error("tabs requires a non-empty items list at create time") {}
};

// formulas ------------------------------------------------------------------

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("formula parse error: " + what) {}
};

struct UnboundVariableError : Error {
  explicit UnboundVariableError(const std::string& name)
      : Error("unbound variable '" + name + "'"), variable(name) {}
  std::string variable;
};

// event scripts -------------------------------------------------------------

struct ScriptError : Error {
  using Error::Error;
};

}  // namespace obsui
