#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace adiosc {

// Fixed-size worker pool for data-parallel loops over disjoint index ranges.
//
// parallel_for splits [begin, end) into at most size() contiguous chunks and
// runs body(lo, hi) on the workers (and the calling thread). Each output
// element must be written by exactly one chunk; under that contract results
// are bitwise identical for every thread count, because chunk boundaries never
// change the per-element operation order.
class ThreadPool {
 public:
  explicit ThreadPool(int threads);
  ~ThreadPool();

  int size() const { return size_; }
  void parallel_for(int begin, int end, const std::function<void(int, int)>& body);

 private:
  struct Range {
    int lo, hi;
  };

  void worker_loop();
  bool grab_and_run(std::unique_lock<std::mutex>& lock);

  int size_ = 1;
  std::vector<std::thread> workers_;
  std::mutex mu_;
  std::condition_variable cv_work_, cv_done_;
  const std::function<void(int, int)>* body_ = nullptr;
  std::vector<Range> chunks_;
  size_t next_chunk_ = 0;
  int running_ = 0;
  uint64_t epoch_ = 0;
  bool stop_ = false;
};

}  // namespace adiosc
