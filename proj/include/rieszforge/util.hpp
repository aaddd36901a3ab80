#ifndef RIESZFORGE_UTIL_HPP
#define RIESZFORGE_UTIL_HPP

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rieszforge/rational.hpp"

namespace rieszforge {

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Index ranges are
/// disjoint so writes to per-index slots stay race-free.
inline void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    unsigned workers = std::min<std::size_t>(static_cast<unsigned>(jobs), n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

/// 17-significant-digit decimal, round-trip safe for double.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Deterministic dyadic rational in [0, 1) with a 2^30 denominator.
inline Rat random_unit_rat(std::mt19937_64& gen) {
    const std::uint64_t den = 1ull << 30;
    std::uint64_t num = gen() % den;
    return Rat(BigInt(num), BigInt(den));
}

}  // namespace rieszforge

#endif
