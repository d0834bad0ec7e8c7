#include "adiosc/parallel.hpp"

#include <algorithm>

namespace adiosc {

ThreadPool::ThreadPool(int threads) {
  size_ = std::max(1, threads);
  // size_ - 1 workers; the caller of parallel_for is the remaining lane
  for (int i = 0; i + 1 < size_; ++i) workers_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  cv_work_.notify_all();
  for (auto& t : workers_) t.join();
}

// Runs one pending chunk if available. Returns false when none are left.
// Must be entered holding the lock; re-acquires it before returning.
bool ThreadPool::grab_and_run(std::unique_lock<std::mutex>& lock) {
  if (next_chunk_ >= chunks_.size()) return false;
  const Range r = chunks_[next_chunk_++];
  ++running_;
  lock.unlock();
  (*body_)(r.lo, r.hi);
  lock.lock();
  --running_;
  if (next_chunk_ >= chunks_.size() && running_ == 0) cv_done_.notify_all();
  return true;
}

void ThreadPool::worker_loop() {
  std::unique_lock<std::mutex> lock(mu_);
  uint64_t seen = 0;
  for (;;) {
    cv_work_.wait(lock, [&] { return stop_ || (epoch_ != seen && next_chunk_ < chunks_.size()); });
    if (stop_) return;
    seen = epoch_;
    while (grab_and_run(lock)) {
    }
  }
}

void ThreadPool::parallel_for(int begin, int end, const std::function<void(int, int)>& body) {
  if (end <= begin) return;
  const int n = end - begin;
  if (size_ == 1 || n == 1) {
    body(begin, end);
    return;
  }
  const int k = std::min(size_, n);
  std::unique_lock<std::mutex> lock(mu_);
  body_ = &body;
  chunks_.clear();
  for (int c = 0; c < k; ++c) {
    const int lo = begin + static_cast<int>(static_cast<long long>(n) * c / k);
    const int hi = begin + static_cast<int>(static_cast<long long>(n) * (c + 1) / k);
    if (lo < hi) chunks_.push_back({lo, hi});
  }
  next_chunk_ = 0;
  ++epoch_;
  cv_work_.notify_all();
  while (grab_and_run(lock)) {
  }
  cv_done_.wait(lock, [&] { return next_chunk_ >= chunks_.size() && running_ == 0; });
  body_ = nullptr;
}

}  // namespace adiosc
