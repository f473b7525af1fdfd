// Times the quadrature cell kernels in serial and OpenMP execution and checks
// that both reductions agree bit for bit.

#include "gbv/quadrature.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double wall_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

struct TimedResult {
    double value;
    double seconds;
};

TimedResult timed_total(const gbv::ConformalMetric& m, const gbv::GradedScheme& scheme, bool parallel,
                        int reps) {
    gbv::set_parallel_execution(parallel);
    double value = 0.0;
    double t0 = wall_seconds();
    for (int r = 0; r < reps; ++r) value = gbv::total_curvature(m, scheme).value;
    double t1 = wall_seconds();
    return {value, (t1 - t0) / reps};
}

} // namespace

int main(int argc, char** argv) {
    int reps = 3;
    double beta = 0.5;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc) reps = std::atoi(argv[++i]);
        if (std::strcmp(argv[i], "--beta") == 0 && i + 1 < argc) beta = std::atof(argv[++i]);
    }

    gbv::ConformalMetric m = gbv::football_metric(beta);
    gbv::GradedScheme scheme;

    std::size_t cells = gbv::surface_cells(m, scheme, scheme.excision_ladder.back()).size();
    std::printf("total curvature of football(beta = %g), %zu cells per deepest ladder entry\n",
                beta, cells);
#ifdef _OPENMP
    std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
    std::printf("openmp: not compiled in (parallel run falls back to serial)\n");
#endif

    TimedResult serial = timed_total(m, scheme, false, reps);
    TimedResult parallel = timed_total(m, scheme, true, reps);
    gbv::set_parallel_execution(gbv::openmp_compiled_in());

    std::printf("serial reference: %.3f s/run, value = %.17g\n", serial.seconds, serial.value);
    std::printf("openmp kernels:   %.3f s/run, value = %.17g\n", parallel.seconds, parallel.value);
    std::printf("speedup: %.2fx\n", serial.seconds / parallel.seconds);

    if (std::memcmp(&serial.value, &parallel.value, sizeof(double)) != 0) {
        std::printf("MISMATCH: serial and parallel reductions differ\n");
        return 1;
    }
    std::printf("serial and parallel reductions are bit-identical\n");
    return 0;
}
