#pragma once
// Internal helper: run `count` independent blocks on up to `threads`
// workers.  Each block writes only its own slot, so results are
// identical for any thread count; the lowest-indexed exception (if any)
// is rethrown after all workers join.

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace hecke::detail {

inline void parallel_blocks(std::int64_t count, int threads,
                            const std::function<void(std::int64_t)>& fn) {
    if (count <= 0) return;
    if (threads < 1) threads = 1;
    if (threads == 1 || count == 1) {
        for (std::int64_t b = 0; b < count; ++b) fn(b);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::int64_t first_error_block = count;
    auto worker = [&] {
        for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= count) return;
            try {
                fn(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (b < first_error_block) {
                    first_error_block = b;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = (int)std::min<std::int64_t>(threads, count);
    pool.reserve((std::size_t)n);
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hecke::detail
