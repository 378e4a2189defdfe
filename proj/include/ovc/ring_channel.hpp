#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <stdexcept>

namespace ovc {

// Bounded single-producer / single-consumer channel standing in for the DMA
// ring: when full, the OLDEST element is discarded and the new one accepted,
// so a real-time consumer always sees the freshest data. Drops are a counted
// outcome, not an error.
template <typename T>
class RingChannel {
 public:
  explicit RingChannel(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ring capacity must be > 0");
  }

  // Always accepts the new value; returns true when an older element was
  // dropped to make room.
  bool push(T value) {
    bool dropped = false;
    {
      std::lock_guard lock(mutex_);
      if (closed_) throw std::logic_error("push on closed channel");
      if (queue_.size() == capacity_) {
        queue_.pop_front();
        ++drop_count_;
        dropped = true;
      }
      queue_.push_back(std::move(value));
    }
    available_.notify_one();
    return dropped;
  }

  // Non-blocking pop; nullopt when the ring is empty.
  std::optional<T> try_pop() {
    std::lock_guard lock(mutex_);
    return pop_locked();
  }

  // Blocking pop; nullopt only when the producer has closed the channel and
  // the ring is drained (the disconnected state).
  std::optional<T> pop_wait() {
    std::unique_lock lock(mutex_);
    available_.wait(lock, [this] { return !queue_.empty() || closed_; });
    return pop_locked();
  }

  // Producer signals end-of-stream; the consumer may still drain the ring.
  void close() {
    {
      std::lock_guard lock(mutex_);
      closed_ = true;
    }
    available_.notify_all();
  }

  bool closed() const {
    std::lock_guard lock(mutex_);
    return closed_;
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return queue_.size();
  }

  std::size_t capacity() const noexcept { return capacity_; }

  std::uint64_t drop_count() const {
    std::lock_guard lock(mutex_);
    return drop_count_;
  }

 private:
  std::optional<T> pop_locked() {
    if (queue_.empty()) return std::nullopt;
    std::optional<T> out(std::move(queue_.front()));
    queue_.pop_front();
    return out;
  }

  const std::size_t capacity_;
  mutable std::mutex mutex_;
  std::condition_variable available_;
  std::deque<T> queue_;
  std::uint64_t drop_count_ = 0;
  bool closed_ = false;
};

}  // namespace ovc
