#pragma once

// Bulk tau production. Tau number i of a family is always simulated from the
// generator family.child(i), so the serial reference and the OpenMP kernels
// return identical results for any thread count.

#include <omp.h>

#include <cstdint>
#include <vector>

#include "exact/regen.hpp"
#include "exact/rng.hpp"

namespace exact {

/// Number of i in [first, first+count) with tau_i >= n.
template <RegenerativeKernel K>
std::uint64_t count_tau_at_least_serial(const K& kernel, StreamKey family, std::uint64_t first,
                                        std::uint64_t count, std::uint64_t n) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = first; i < first + count; ++i) {
        Rng rng = family.child(i).rng();
        hits += tau_at_least(kernel, rng, n) ? 1 : 0;
    }
    return hits;
}

template <RegenerativeKernel K>
std::uint64_t count_tau_at_least_parallel(const K& kernel, StreamKey family, std::uint64_t first,
                                          std::uint64_t count, std::uint64_t n, int workers) {
    if (workers <= 1 || count < 64) return count_tau_at_least_serial(kernel, family, first, count, n);
    std::uint64_t hits = 0;
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 256) reduction(+ : hits)
    for (std::int64_t j = 0; j < total; ++j) {
        Rng rng = family.child(first + static_cast<std::uint64_t>(j)).rng();
        hits += tau_at_least(kernel, rng, n) ? 1 : 0;
    }
    return hits;
}

template <RegenerativeKernel K>
std::vector<std::uint64_t> sample_taus_serial(const K& kernel, StreamKey family, std::uint64_t first,
                                              std::uint64_t count) {
    std::vector<std::uint64_t> out(count);
    for (std::uint64_t j = 0; j < count; ++j) {
        Rng rng = family.child(first + j).rng();
        out[j] = draw_tau(kernel, rng).tau;
    }
    return out;
}

template <RegenerativeKernel K>
std::vector<std::uint64_t> sample_taus_parallel(const K& kernel, StreamKey family, std::uint64_t first,
                                                std::uint64_t count, int workers) {
    if (workers <= 1) return sample_taus_serial(kernel, family, first, count);
    std::vector<std::uint64_t> out(count);
    const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 16)
    for (std::int64_t j = 0; j < total; ++j) {
        Rng rng = family.child(first + static_cast<std::uint64_t>(j)).rng();
        out[static_cast<std::size_t>(j)] = draw_tau(kernel, rng).tau;
    }
    return out;
}

} // namespace exact
