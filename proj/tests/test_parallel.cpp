#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <utility>
#include <vector>

#include "adiosc/parallel.hpp"

using namespace adiosc;

TEST_CASE("size is clamped to at least one") {
  CHECK(ThreadPool(0).size() == 1);
  CHECK(ThreadPool(-2).size() == 1);
  CHECK(ThreadPool(1).size() == 1);
  CHECK(ThreadPool(4).size() == 4);
}

TEST_CASE("every index is visited exactly once") {
  for (int threads : {1, 2, 4, 7}) {
    ThreadPool pool(threads);
    for (int n : {0, 1, 2, 3, 17, 1000}) {
      std::vector<std::atomic<int>> hits(n);
      pool.parallel_for(0, n, [&](int lo, int hi) {
        for (int i = lo; i < hi; ++i) hits[i].fetch_add(1);
      });
      for (int i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
    }
  }
}

TEST_CASE("chunks partition the range in order") {
  ThreadPool pool(4);
  const int n = 23;
  std::vector<int> owner(n, -1);
  std::mutex mu;
  std::vector<std::pair<int, int>> ranges;
  pool.parallel_for(0, n, [&](int lo, int hi) {
    std::lock_guard<std::mutex> g(mu);
    ranges.emplace_back(lo, hi);
  });
  std::sort(ranges.begin(), ranges.end());
  int expect = 0;
  for (auto [lo, hi] : ranges) {
    CHECK(lo == expect);
    CHECK(hi > lo);
    expect = hi;
  }
  CHECK(expect == n);
  CHECK(ranges.size() <= 4);
}

TEST_CASE("disjoint-write transforms are bitwise thread-count independent") {
  const int n = 503;
  std::vector<double> ref(n);
  for (int i = 0; i < n; ++i) ref[i] = std::sin(0.1 * i) * std::exp(-0.001 * i);

  auto run = [&](int threads) {
    ThreadPool pool(threads);
    std::vector<double> out(n);
    pool.parallel_for(0, n, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) out[i] = std::sin(0.1 * i) * std::exp(-0.001 * i);
    });
    return out;
  };
  CHECK(run(1) == ref);
  CHECK(run(3) == ref);
  CHECK(run(4) == ref);
  CHECK(run(16) == ref);
}

TEST_CASE("a pool is reusable across many loops") {
  ThreadPool pool(4);
  long total = 0;
  for (int round = 0; round < 200; ++round) {
    std::vector<long> parts(8, 0);
    pool.parallel_for(0, 8, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) parts[i] = i + round;
    });
    for (long p : parts) total += p;
  }
  long want = 0;
  for (int round = 0; round < 200; ++round)
    for (int i = 0; i < 8; ++i) want += i + round;
  CHECK(total == want);
}
