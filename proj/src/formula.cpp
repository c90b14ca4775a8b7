#include "obsui/formula.hpp"

#include <cctype>

#include "obsui/errors.hpp"

namespace obsui {

std::optional<std::int64_t> env_lookup(const Env& env, std::string_view name) {
  for (const auto& [key, value] : env) {
    if (key == name) return value;
  }
  return std::nullopt;
}

Env env_set(Env env, std::string_view name, std::int64_t value) {
  for (auto& [key, existing] : env) {
    if (key == name) {
      existing = value;
      return env;
    }
  }
  env.emplace_back(std::string(name), value);
  return env;
}

namespace {

// expr   := term (('+' | '-') term)*
// term   := factor ('*' factor)*
// factor := INT | VAR | '(' expr ')'
class Parser {
 public:
  Parser(std::string_view src, const Env& env) : src_(src), env_(env) {}

  std::int64_t run() {
    std::int64_t value = expr();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return value;
  }

 private:
  std::int64_t expr() {
    std::int64_t value = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  std::int64_t term() {
    std::int64_t value = factor();
    for (;;) {
      skip_space();
      if (accept('*')) {
        value *= factor();
      } else {
        return value;
      }
    }
  }

  std::int64_t factor() {
    skip_space();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      std::int64_t value = expr();
      skip_space();
      if (!accept(')')) fail("missing ')'");
      return value;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t value = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        value = value * 10 + (src_[pos_] - '0');
        ++pos_;
      }
      return value;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(src_.substr(start, pos_ - start));
      auto bound = env_lookup(env_, name);
      if (!bound) throw UnboundVariableError(name);
      return *bound;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  bool accept(char c) {
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at position " + std::to_string(pos_) + " in \"" +
                     std::string(src_) + "\"");
  }

  std::string_view src_;
  const Env& env_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t eval_formula(std::string_view expr, const Env& env) {
  return Parser(expr, env).run();
}

}  // namespace obsui
