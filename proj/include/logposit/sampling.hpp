#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace logposit {

enum class Sampling { exhaustive, random };

// Deterministic RNG wrapper. mt19937_64 has a fully specified sequence, and
// the gaussian draw is a hand-rolled Box-Muller so results do not depend on
// the standard library's distribution implementation.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    std::uint32_t next_bits(int n_bits) {
        const std::uint64_t v = engine_();
        return n_bits == 32 ? static_cast<std::uint32_t>(v)
                            : static_cast<std::uint32_t>(v & ((std::uint64_t{1} << n_bits) - 1));
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1p-53; }

    double next_gaussian();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Fixed-block deterministic map-reduce: the block decomposition and the
// reduction order depend only on `total`, never on the thread count, so a
// parallel run is bit-identical to a serial one.
//
// map(block_index, begin, end) -> Partial; reduce(acc, Partial) applied in
// block order. threads == 0 picks the LOGPOSIT_THREADS env var, defaulting
// to the hardware concurrency.
int resolve_thread_count(int threads);

template <typename Partial, typename Map, typename Reduce>
Partial blocked_reduce(std::uint64_t total, Map map, Reduce reduce, int threads,
                       std::uint64_t block_size = 1 << 14);

}  // namespace logposit

#include "logposit/sampling_impl.hpp"
