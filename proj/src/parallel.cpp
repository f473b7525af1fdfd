#include "gbv/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gbv {

namespace {
std::atomic<bool> g_parallel{
#ifdef _OPENMP
    true
#else
    false
#endif
};
} // namespace

void evaluate_indexed_serial(std::size_t n, double* out,
                             const std::function<double(std::size_t)>& eval) {
    for (std::size_t i = 0; i < n; ++i) out[i] = eval(i);
}

void evaluate_indexed_parallel(std::size_t n, double* out,
                               const std::function<double(std::size_t)>& eval) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < (long long)n; ++i) out[i] = eval((std::size_t)i);
#else
    evaluate_indexed_serial(n, out, eval);
#endif
}

double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 16) {
        double acc = 0.0;
        for (double x : xs) acc += x;
        return acc;
    }
    std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

void set_parallel_execution(bool enabled) { g_parallel.store(enabled); }
bool parallel_execution() { return g_parallel.load(); }

bool openmp_compiled_in() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

double sum_indexed(std::size_t n, const std::function<double(std::size_t)>& eval) {
    std::vector<double> values(n);
    if (parallel_execution())
        evaluate_indexed_parallel(n, values.data(), eval);
    else
        evaluate_indexed_serial(n, values.data(), eval);
    return pairwise_sum(values);
}

} // namespace gbv
