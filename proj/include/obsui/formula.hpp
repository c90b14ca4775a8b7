#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace obsui {

// Variable bindings for formula evaluation, in association-list form.
using Env = std::vector<std::pair<std::string, std::int64_t>>;

std::optional<std::int64_t> env_lookup(const Env& env, std::string_view name);
Env env_set(Env env, std::string_view name, std::int64_t value);

// Evaluates an integer arithmetic formula over +, -, *, parentheses,
// variables and literals. + and - are left-associative; * binds tighter.
// Throws ParseError on malformed input and UnboundVariableError when a
// variable is missing from env.
std::int64_t eval_formula(std::string_view expr, const Env& env);

}  // namespace obsui
