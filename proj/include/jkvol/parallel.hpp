#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace jkvol {

// Splits [0, total) into `threads` contiguous ranges and runs fn(begin, end) on each in its
// own thread, returning the per-range results in range order. All reductions performed on the
// results are exact rational sums, so the outcome is independent of the partition; this only
// affects wall-clock time. If a worker throws, the first exception (in range order) is
// rethrown on the calling thread after all workers have joined.
template <class Result, class Fn>
std::vector<Result> parallel_ranges(std::uint64_t total, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    std::uint64_t want = static_cast<std::uint64_t>(threads);
    if (want > total) want = total ? total : 1;
    if (want <= 1) {
        std::vector<Result> out;
        out.push_back(fn(0, total));
        return out;
    }
    std::vector<Result> out(static_cast<size_t>(want));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(want));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(want));
    std::uint64_t chunk = total / want;
    std::uint64_t extra = total % want;
    std::uint64_t begin = 0;
    for (std::uint64_t i = 0; i < want; ++i) {
        std::uint64_t len = chunk + (i < extra ? 1 : 0);
        std::uint64_t end = begin + len;
        pool.emplace_back([&, i, begin, end]() {
            try {
                out[static_cast<size_t>(i)] = fn(begin, end);
            } catch (...) {
                errors[static_cast<size_t>(i)] = std::current_exception();
            }
        });
        begin = end;
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

} // namespace jkvol
