#pragma once

#include <any>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "obsui/errors.hpp"

// Push-based observable cells. An observable holds a current value and an
// ordered registry of observers. Committing a new value to a root observable
// notifies, synchronously and on the committing thread, exactly the observers
// registered at the moment of the commit, in registration order. Derived
// observables recompute through their mapper on every source commit and then
// notify their own observers the same way.
//
// Propagation is depth-first and independent per observable: there is no
// topological scheduling and no coalescing of equal values, so siblings
// derived from a shared source may transiently disagree about its generation
// (a "glitch"); once all in-flight notifications finish, every derived value
// equals mapper(source value).
//
// All operations are safe to call from any thread. A commit is an atomic
// read-modify-write under the cell's lock, which is held through notification
// so per-observable notification order equals commit order. Observers may
// re-enter (e.g. commit to other observables); a configurable depth guard
// (default 1000) converts runaway recursion into PropagationDepthError.

namespace obsui {

enum class ObsKind { Root, Derived };

class Subscription;

// Total number of live observer registrations (anywhere in the process).
// Derived observables count their internal source link as one registration.
std::int64_t active_subscription_count();

// Depth guard for reentrant / chained propagation.
void set_propagation_depth_limit(int limit);
int propagation_depth_limit();

// Called when a mapper raises while propagating a source commit into a
// derived observable. The failed derived update is skipped; the source is
// unaffected. Default: print to stderr and continue.
void set_propagation_error_hook(std::function<void(std::exception_ptr)> hook);
void report_propagation_error(std::exception_ptr err);

namespace detail {

std::uint64_t next_obs_id();
std::uint64_t next_sub_id();
void subscription_added();
void subscription_removed();

struct SubState {
  std::atomic<bool> active{true};
};

// Increments a thread-local nesting depth for the duration of one commit.
struct DepthGuard {
  DepthGuard();
  ~DepthGuard();
};

// Type-erased part of an observable cell: identity, kind, and the observer
// registry. Typed storage lives in ObsNode<T>.
class ObsNodeBase : public std::enable_shared_from_this<ObsNodeBase> {
 public:
  explicit ObsNodeBase(ObsKind kind) : id_(next_obs_id()), kind_(kind) {}

  virtual ~ObsNodeBase() {
    for (const Entry& e : observers_) {
      if (e.state->active.exchange(false)) subscription_removed();
    }
  }

  std::uint64_t id() const { return id_; }
  ObsKind kind() const { return kind_; }

  virtual std::any peek_any() const = 0;

  // Appends an observer; it sees values committed strictly after this call.
  Subscription observe_any(std::function<void(const std::any&)> cb);
  void remove_observer(std::uint64_t sub_id, const std::shared_ptr<SubState>& state);

 protected:
  struct Entry {
    std::uint64_t sub_id;
    std::shared_ptr<SubState> state;
    std::function<void(const std::any&)> fn;
  };

  // Pre: mu_ held. Snapshots the registry and invokes each still-active
  // observer with the committed value.
  void notify_locked(const std::any& value);

  mutable std::recursive_mutex mu_;

 private:
  std::uint64_t id_;
  ObsKind kind_;
  std::vector<Entry> observers_;
};

template <class T>
class ObsNode final : public ObsNodeBase {
 public:
  ObsNode(ObsKind kind, T initial) : ObsNodeBase(kind), value_(std::move(initial)) {}

  ~ObsNode() override;

  T peek() const {
    std::lock_guard lk(mu_);
    return value_;
  }

  std::any peek_any() const override {
    std::lock_guard lk(mu_);
    return std::any(value_);
  }

  // Atomic read-modify-write followed by synchronous notification. Throws
  // whatever f throws, leaving the value unchanged.
  T commit(const std::function<T(const T&)>& f) {
    std::lock_guard lk(mu_);
    DepthGuard depth;
    T next = f(value_);
    value_ = next;
    notify_locked(std::any(value_));
    return next;
  }

  // Derived recompute path: the mapper already ran outside this node's lock.
  void commit_value(T next) {
    std::lock_guard lk(mu_);
    DepthGuard depth;
    value_ = std::move(next);
    notify_locked(std::any(value_));
  }

  // Wires a derived node to its source. The node owns the source reference
  // (keeps the chain peekable) and the registration (revoked on destruction).
  void attach_source(std::shared_ptr<ObsNodeBase> source, Subscription link);

 private:
  T value_;
  std::shared_ptr<ObsNodeBase> source_;
  std::unique_ptr<Subscription> source_link_;
};

}  // namespace detail

// Identity handle for dependency lists and update routing.
using AnyObs = std::shared_ptr<detail::ObsNodeBase>;

// Revocable registration of one observer on one observable. Copies share the
// registration; revoking any copy revokes all. Revocation is idempotent and
// guarantees the callback is never invoked afterwards.
class Subscription {
 public:
  Subscription() = default;
  Subscription(std::weak_ptr<detail::ObsNodeBase> target, std::uint64_t sub_id,
               std::shared_ptr<detail::SubState> state)
      : target_(std::move(target)), sub_id_(sub_id), state_(std::move(state)) {}

  bool active() const { return state_ && state_->active.load(); }
  std::uint64_t id() const { return sub_id_; }

  void unobserve() {
    if (!state_) return;
    if (auto node = target_.lock()) {
      node->remove_observer(sub_id_, state_);
    } else if (state_->active.exchange(false)) {
      // Node already gone; its destructor accounted for the registration.
    }
  }

 private:
  std::weak_ptr<detail::ObsNodeBase> target_;
  std::uint64_t sub_id_ = 0;
  std::shared_ptr<detail::SubState> state_;
};

namespace detail {

inline Subscription ObsNodeBase::observe_any(std::function<void(const std::any&)> cb) {
  auto state = std::make_shared<SubState>();
  auto sub_id = next_sub_id();
  {
    std::lock_guard lk(mu_);
    observers_.push_back(Entry{sub_id, state, std::move(cb)});
  }
  subscription_added();
  return Subscription(weak_from_this(), sub_id, state);
}

inline void ObsNodeBase::remove_observer(std::uint64_t sub_id,
                                         const std::shared_ptr<SubState>& state) {
  if (!state->active.exchange(false)) return;
  subscription_removed();
  std::lock_guard lk(mu_);
  for (auto it = observers_.begin(); it != observers_.end(); ++it) {
    if (it->sub_id == sub_id) {
      observers_.erase(it);
      break;
    }
  }
}

inline void ObsNodeBase::notify_locked(const std::any& value) {
  // Snapshot so observers added during notification miss this value and
  // observers removed during notification are skipped via their state flag.
  std::vector<Entry> snapshot = observers_;
  for (const Entry& e : snapshot) {
    if (!e.state->active.load()) continue;
    e.fn(value);
  }
}

template <class T>
ObsNode<T>::~ObsNode() {
  if (source_link_) source_link_->unobserve();
}

template <class T>
void ObsNode<T>::attach_source(std::shared_ptr<ObsNodeBase> source, Subscription link) {
  source_ = std::move(source);
  source_link_ = std::make_unique<Subscription>(std::move(link));
}

// ObsNodeBase needs access to observers_ in ~ObsNode.
}  // namespace detail

// Value-semantic handle to an observable cell. Copies alias the same cell.
template <class T>
class Obs {
 public:
  using value_type = T;

  explicit Obs(std::shared_ptr<detail::ObsNode<T>> node) : node_(std::move(node)) {}

  std::uint64_t id() const { return node_->id(); }
  ObsKind kind() const { return node_->kind(); }

  // Current value, without registering an observer. For a derived cell this
  // is the last computed value; nothing is recomputed.
  T peek() const { return node_->peek(); }

  // Replaces the value with f(old) and notifies. Roots only.
  T update(const std::function<T(const T&)>& f) {
    if (kind() == ObsKind::Derived) throw DerivedUpdateError();
    return node_->commit(f);
  }

  // Convenience for update to a fixed value.
  T set(T value) {
    return update([&](const T&) { return value; });
  }

  Subscription observe(std::function<void(const T&)> cb) const {
    return node_->observe_any(
        [fn = std::move(cb)](const std::any& v) { fn(std::any_cast<const T&>(v)); });
  }

  // Derives a new observable whose value tracks g(this value). g runs now
  // (eagerly) and again on every commit of this cell.
  template <class F>
  auto map(F g) const -> Obs<std::decay_t<std::invoke_result_t<F, const T&>>> {
    using U = std::decay_t<std::invoke_result_t<F, const T&>>;
    auto derived = std::make_shared<detail::ObsNode<U>>(ObsKind::Derived, g(node_->peek()));
    std::weak_ptr<detail::ObsNode<U>> weak = derived;
    Subscription link = node_->observe_any([weak, g](const std::any& v) {
      auto node = weak.lock();
      if (!node) return;
      std::optional<U> mapped;
      try {
        mapped.emplace(g(std::any_cast<const T&>(v)));
      } catch (...) {
        report_propagation_error(std::current_exception());
        return;
      }
      try {
        node->commit_value(std::move(*mapped));
      } catch (...) {
        // Depth guard tripped (or an observer threw) further down the chain.
        report_propagation_error(std::current_exception());
      }
    });
    derived->attach_source(node_, std::move(link));
    return Obs<U>(std::move(derived));
  }

  // Type-erased identity, for dependency lists.
  AnyObs node() const { return node_; }

  bool same(const Obs& other) const { return node_ == other.node_; }

 private:
  std::shared_ptr<detail::ObsNode<T>> node_;
};

// Creates a root observable holding `initial`.
template <class T>
Obs<T> obs(T initial) {
  return Obs<T>(std::make_shared<detail::ObsNode<T>>(ObsKind::Root, std::move(initial)));
}

}  // namespace obsui
