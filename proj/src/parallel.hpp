#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace uss::detail {

/// Splits [0, count) into `threads` contiguous blocks and runs body(t, begin, end)
/// for each on its own thread. The first exception thrown is rethrown.
template <class Body>
void parallel_blocks(std::uint64_t count, unsigned threads, Body&& body) {
    if (threads <= 1 || count < 2 * threads) {
        body(0u, std::uint64_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const std::uint64_t begin = count * t / threads, end = count * (t + 1) / threads;
            pool.emplace_back([&, t, begin, end] {
                try {
                    body(t, begin, end);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace uss::detail
