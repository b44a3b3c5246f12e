#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace halfplane {

/// Worker count: hardware concurrency, capped by HALFPLANE_BVP_THREADS when set.
inline unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("HALFPLANE_BVP_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap >= 1) {
                n = std::min<unsigned>(n, static_cast<unsigned>(cap));
            }
        } catch (const std::exception&) {
        }
    }
    return n;
}

/// Calls body(i) for i in [0, n) on up to worker_count() threads. The first exception thrown by
/// any call is rethrown after all workers finish.
template <class Body>
void parallel_for(std::size_t n, const Body& body) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

/// out[i] = f(in[i]), evaluated with parallel_for.
template <class In, class F>
auto parallel_map(const std::vector<In>& in, const F& f) {
    std::vector<std::decay_t<decltype(f(in.front()))>> out(in.size());
    parallel_for(in.size(), [&](std::size_t i) { out[i] = f(in[i]); });
    return out;
}

}  // namespace halfplane
