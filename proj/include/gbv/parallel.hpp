#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gbv {

/// Fills out[i] = eval(i). The OpenMP variant distributes iterations across
/// threads; results are index-addressed, so the filled buffer is identical to
/// the serial one bit for bit.
void evaluate_indexed_serial(std::size_t n, double* out, const std::function<double(std::size_t)>& eval);
void evaluate_indexed_parallel(std::size_t n, double* out, const std::function<double(std::size_t)>& eval);

/// Deterministic pairwise (cascade) summation over the canonical order.
double pairwise_sum(std::span<const double> xs);

/// Process-wide switch between the OpenMP kernels and the serial reference.
/// Defaults to parallel when compiled with OpenMP. Either path produces
/// byte-identical reductions.
void set_parallel_execution(bool enabled);
bool parallel_execution();
bool openmp_compiled_in();

/// Evaluate and reduce in the canonical order using the active execution mode.
double sum_indexed(std::size_t n, const std::function<double(std::size_t)>& eval);

} // namespace gbv
