#include "obsui/event_loop.hpp"

#include <cstdio>

namespace obsui {

void EventLoop::run_job(const Job& job) {
  try {
    job.run();
  } catch (...) {
    std::function<void(std::exception_ptr)> handler;
    {
      std::lock_guard lk(mu_);
      handler = error_handler_;
    }
    if (handler) {
      handler(std::current_exception());
      return;
    }
    try {
      throw;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "obsui: event-loop job error: %s\n", e.what());
    } catch (...) {
      std::fprintf(stderr, "obsui: event-loop job error (unknown)\n");
    }
  }
}

void EventLoop::set_error_handler(std::function<void(std::exception_ptr)> handler) {
  std::lock_guard lk(mu_);
  error_handler_ = std::move(handler);
}

void EventLoop::post(Job job) {
  {
    std::lock_guard lk(mu_);
    queue_.push_back(std::move(job));
  }
  cv_.notify_all();
}

bool EventLoop::pop(Job& out, std::chrono::milliseconds timeout) {
  std::unique_lock lk(mu_);
  if (!cv_.wait_for(lk, timeout, [&] { return !queue_.empty(); })) return false;
  out = std::move(queue_.front());
  queue_.pop_front();
  pump_thread_ = std::this_thread::get_id();
  pump_active_ = true;
  return true;
}

std::size_t EventLoop::drain_until_idle() {
  std::size_t count = 0;
  for (;;) {
    Job job;
    {
      std::lock_guard lk(mu_);
      if (queue_.empty()) {
        pump_active_ = false;
        break;
      }
      job = std::move(queue_.front());
      queue_.pop_front();
      pump_thread_ = std::this_thread::get_id();
      pump_active_ = true;
    }
    run_job(job);
    ++count;
  }
  return count;
}

bool EventLoop::run_one(std::chrono::milliseconds timeout) {
  Job job;
  if (!pop(job, timeout)) {
    std::lock_guard lk(mu_);
    pump_active_ = false;
    return false;
  }
  run_job(job);
  {
    std::lock_guard lk(mu_);
    pump_active_ = false;
  }
  return true;
}

std::size_t EventLoop::pending() const {
  std::lock_guard lk(mu_);
  return queue_.size();
}

bool EventLoop::pumping_elsewhere() const {
  std::lock_guard lk(mu_);
  return pump_active_ && pump_thread_ != std::this_thread::get_id();
}

}  // namespace obsui
