#include "zml/parallel.hpp"

#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace zml {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() {
    const unsigned n = g_threads.load();
    if (n != 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t chunk) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(thread_count(), chunks));

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_index = std::numeric_limits<std::size_t>::max();
    std::exception_ptr err;

    auto run = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            const std::size_t begin = c * chunk;
            const std::size_t end = std::min(n, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (i < err_index) {
                        err_index = i;
                        err = std::current_exception();
                    }
                    break;
                }
            }
        }
    };

    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);
}

}  // namespace zml
