#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace meshpat {

inline constexpr const char* kJobsEnvVar = "MESHPAT_JOBS";

// Worker count: $MESHPAT_JOBS when set to a positive integer, otherwise the
// hardware concurrency.
inline int default_jobs() {
    if (const char* env = std::getenv(kJobsEnvVar)) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline std::size_t chunk_count(std::uint64_t total) {
    return static_cast<std::size_t>(std::clamp<std::uint64_t>(total / 256, 1, 256));
}

// Splits [0,total) into contiguous chunks and runs fn(chunk, begin, end) on a
// pool of `jobs` threads. Chunk boundaries depend only on `total`, so callers
// that store per-chunk results and merge them in chunk order are
// deterministic for any job count.
template <class Fn>
std::size_t parallel_chunks(std::uint64_t total, int jobs, Fn&& fn) {
    const std::uint64_t chunks = chunk_count(total);
    const std::uint64_t step = (total + chunks - 1) / chunks;
    auto bounds = [&](std::uint64_t c) {
        return std::pair<std::uint64_t, std::uint64_t>{std::min(total, c * step),
                                                       std::min(total, (c + 1) * step)};
    };
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
        for (std::uint64_t c = next++; c < chunks; c = next++) {
            try {
                auto [b, e] = bounds(c);
                fn(static_cast<std::size_t>(c), b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::uint64_t>(std::max(1, jobs), chunks));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return static_cast<std::size_t>(chunks);
}

// Runs fn(i) for every i in [0,count) with dynamic scheduling, one index at a
// time. Results must be stored by index to stay deterministic.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&]() {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    const int threads = static_cast<int>(std::min<std::size_t>(std::max(1, jobs), std::max<std::size_t>(count, 1)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace meshpat
