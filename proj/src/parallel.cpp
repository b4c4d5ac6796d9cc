#include "idd/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace idd {

namespace {
std::atomic<unsigned> g_workers{0};
}

void set_default_workers(unsigned n) { g_workers.store(n); }

unsigned default_workers() {
    unsigned n = g_workers.load();
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    return n;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned workers) {
    if (n == 0) return;
    unsigned w = workers == 0 ? default_workers() : workers;
    w = static_cast<unsigned>(std::min<std::size_t>(w, n));
    if (w <= 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + w - 1) / w;
    std::vector<std::thread> threads;
    threads.reserve(w);
    std::exception_ptr first_error;
    std::mutex err_mutex;
    for (unsigned i = 0; i < w; ++i) {
        const std::size_t begin = static_cast<std::size_t>(i) * chunk;
        if (begin >= n) break;
        const std::size_t end = std::min(n, begin + chunk);
        threads.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace idd
