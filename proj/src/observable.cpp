#include "obsui/observable.hpp"

#include <cstdio>

namespace obsui {
namespace {

std::atomic<std::uint64_t> g_obs_id{0};
std::atomic<std::uint64_t> g_sub_id{0};
std::atomic<std::int64_t> g_active_subs{0};
std::atomic<int> g_depth_limit{1000};

thread_local int t_depth = 0;

std::mutex g_hook_mu;
std::function<void(std::exception_ptr)> g_propagation_hook;

void default_propagation_hook(std::exception_ptr err) {
  try {
    if (err) std::rethrow_exception(err);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "obsui: propagation error: %s\n", e.what());
  } catch (...) {
    std::fprintf(stderr, "obsui: propagation error (unknown)\n");
  }
}

}  // namespace

std::int64_t active_subscription_count() { return g_active_subs.load(); }

void set_propagation_depth_limit(int limit) { g_depth_limit.store(limit); }

int propagation_depth_limit() { return g_depth_limit.load(); }

void set_propagation_error_hook(std::function<void(std::exception_ptr)> hook) {
  std::lock_guard lk(g_hook_mu);
  g_propagation_hook = std::move(hook);
}

void report_propagation_error(std::exception_ptr err) {
  std::function<void(std::exception_ptr)> hook;
  {
    std::lock_guard lk(g_hook_mu);
    hook = g_propagation_hook;
  }
  if (hook) {
    hook(err);
  } else {
    default_propagation_hook(err);
  }
}

namespace detail {

std::uint64_t next_obs_id() { return ++g_obs_id; }
std::uint64_t next_sub_id() { return ++g_sub_id; }
void subscription_added() { ++g_active_subs; }
void subscription_removed() { --g_active_subs; }

DepthGuard::DepthGuard() {
  int limit = g_depth_limit.load();
  if (t_depth >= limit) throw PropagationDepthError(limit);
  ++t_depth;
}

DepthGuard::~DepthGuard() { --t_depth; }

}  // namespace detail
}  // namespace obsui
