#ifndef HDB_TRIALS_HPP
#define HDB_TRIALS_HPP

#include <cstdint>
#include <vector>

#include "hdb/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hdb {

// Runs n independent seeded trials and collects the results in trial order.
// Each trial derives its own RNG from (seed, index), so the parallel and the
// serial paths produce identical result vectors. The serial path is the
// reference implementation; the OpenMP path is the default when available.
template <class Result, class Fn>
std::vector<Result> run_trials_serial(size_t n, uint64_t seed, Fn&& fn) {
    std::vector<Result> out(n);
    for (size_t i = 0; i < n; ++i) {
        Rng rng = Rng::for_trial(seed, i);
        out[i] = fn(i, rng);
    }
    return out;
}

template <class Result, class Fn>
std::vector<Result> run_trials_parallel(size_t n, uint64_t seed, Fn&& fn) {
    std::vector<Result> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        Rng rng = Rng::for_trial(seed, static_cast<uint64_t>(i));
        out[static_cast<size_t>(i)] = fn(static_cast<size_t>(i), rng);
    }
    return out;
}

template <class Result, class Fn>
std::vector<Result> run_trials(size_t n, uint64_t seed, Fn&& fn, bool parallel = true) {
    if (parallel) return run_trials_parallel<Result>(n, seed, fn);
    return run_trials_serial<Result>(n, seed, fn);
}

}  // namespace hdb

#endif
