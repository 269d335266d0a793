#pragma once

// Tabular scan results and a deterministic parallel map for grid sweeps.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace gwqed {

struct ScanResult {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Throws DomainError if a row's arity differs from the header's.
  void add_row(std::vector<double> row);
  std::vector<double> column(const std::string& name) const;
};

/// Evenly spaced grid with exact endpoints: lo + (hi - lo) * i / (steps - 1).
std::vector<double> linspace(double lo, double hi, int steps);

/// Number of worker threads used by parallel_map.
unsigned worker_count();

/// Applies f to every index in [0, n) across worker threads. Results are
/// stored by index, so output order never depends on scheduling. The first
/// exception thrown by any worker is rethrown after all workers join.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& f) {
  std::vector<T> out(n);
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace gwqed
