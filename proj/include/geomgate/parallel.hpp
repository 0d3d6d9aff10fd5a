#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace geomgate {

// Worker count: explicit request, else GEOMGATE_THREADS, else hardware; 0
// means auto everywhere.
inline unsigned resolve_worker_count(unsigned requested = 0) {
    unsigned n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("GEOMGATE_THREADS")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end == env || *end != '\0')
                throw std::invalid_argument("GEOMGATE_THREADS: not a number: " +
                                            std::string(env));
            if (v < 0) throw std::invalid_argument("GEOMGATE_THREADS: negative");
            n = static_cast<unsigned>(v);
        }
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    return n;
}

// Runs fn(i) for i in [0, n). Each item must write only to its own
// preallocated slot; results are then identical for any worker count, and
// any later reduction runs in index order.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned workers = 0) {
    workers = resolve_worker_count(workers);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace geomgate
