#include "sphconv/parallel.hpp"

#include <atomic>

namespace sphconv {

namespace {
std::atomic<ExecMode> g_mode{ExecMode::Parallel};

template <typename T>
T pairwise_sum_impl(std::span<const T> v) {
  const std::size_t n = v.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(v.subspan(0, half)) + pairwise_sum_impl(v.subspan(half));
}
}  // namespace

ExecMode exec_mode() { return g_mode.load(std::memory_order_relaxed); }

void set_exec_mode(ExecMode mode) { g_mode.store(mode, std::memory_order_relaxed); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  if (exec_mode() == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

double pairwise_sum(std::span<const double> v) { return pairwise_sum_impl(v); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> v) {
  return pairwise_sum_impl(v);
}

}  // namespace sphconv
