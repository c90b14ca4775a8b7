#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

namespace obsui {

enum class JobKind { Update, Callback, Control };

struct Job {
  JobKind kind;
  std::function<void()> run;
};

// FIFO job queue shared by everything attached to one backend. Jobs may be
// posted from any thread; they execute one at a time on whichever thread is
// pumping (the "event-loop thread" for that backend).
class EventLoop {
 public:
  void post(Job job);

  // Runs queued jobs in order until the queue is empty, including jobs
  // enqueued by the jobs themselves. Returns the number of jobs executed.
  std::size_t drain_until_idle();

  // Waits up to `timeout` for a job, runs at most one, and reports whether
  // one ran. Used by interactive pumps that interleave input polling.
  bool run_one(std::chrono::milliseconds timeout);

  std::size_t pending() const;

  // Thread currently inside drain_until_idle()/run_one(), if any.
  bool pumping_elsewhere() const;

  // Receives exceptions escaping a job; the pump continues with the next
  // job either way. Default: print to stderr.
  void set_error_handler(std::function<void(std::exception_ptr)> handler);

 private:
  bool pop(Job& out, std::chrono::milliseconds timeout);
  void run_job(const Job& job);

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Job> queue_;
  std::thread::id pump_thread_{};
  bool pump_active_ = false;
  std::function<void(std::exception_ptr)> error_handler_;
};

}  // namespace obsui
