#include "tctl/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace tctl::detail {

namespace {

std::size_t configured_threads() {
    static const std::size_t cached = [] {
        std::size_t n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
        if (const char* env = std::getenv("TCTL_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(v));
        }
        return n;
    }();
    return cached;
}

}  // namespace

void parallel_for_slices(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::size_t threads = std::min(configured_threads(), count);
    if (threads < 2 || count < 3) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (std::size_t t = 0; t + 1 < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace tctl::detail
