#include "isoq/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace isoq {
namespace {

std::atomic<unsigned> g_workers{0};

unsigned workers_from_env() {
  if (const char* env = std::getenv("ISOQ_WORKERS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <class T>
T pairwise(const T* x, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise(x, h) + pairwise(x + h, n - h);
}

}  // namespace

unsigned default_workers() {
  unsigned w = g_workers.load();
  if (w == 0) {
    w = workers_from_env();
    g_workers.store(w);
  }
  return w;
}

void set_default_workers(unsigned workers) { g_workers.store(workers == 0 ? 1 : workers); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers) {
  if (workers == 0) workers = default_workers();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::size_t nthreads = std::min<std::size_t>(workers, n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads - 1);
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

std::complex<double> pairwise_sum(std::span<const std::complex<double>> terms) {
  return pairwise(terms.data(), terms.size());
}

double pairwise_sum(std::span<const double> terms) { return pairwise(terms.data(), terms.size()); }

}  // namespace isoq
