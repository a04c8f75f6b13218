#ifndef SPHCONV_PARALLEL_HPP
#define SPHCONV_PARALLEL_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sphconv {

// Execution mode for the grid kernels. Parallel fills evaluation buffers with
// OpenMP; reductions always run the same deterministic pairwise order, so both
// modes produce bit-identical results (the serial path is kept as the
// reference implementation for tests and the benchmark).
enum class ExecMode { Serial, Parallel };

ExecMode exec_mode();
void set_exec_mode(ExecMode mode);

// index-space map, parallelized in Parallel mode; body(i) must only write
// state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Deterministic pairwise (binary tree) summation; order independent of
// execution mode and thread count.
double pairwise_sum(std::span<const double> v);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);

}  // namespace sphconv

#endif
