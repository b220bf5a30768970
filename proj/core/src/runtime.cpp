#include "gshift/runtime.hpp"

#include "gshift/error.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace gshift {

namespace {

ResourceCaps g_caps;
std::atomic<unsigned> g_threads{1};
std::chrono::steady_clock::time_point g_start = std::chrono::steady_clock::now();

} // namespace

const ResourceCaps& caps() { return g_caps; }

void set_caps(const ResourceCaps& c) { g_caps = c; }

void reset_clock() { g_start = std::chrono::steady_clock::now(); }

void check_clock(std::string_view where)
{
    if (!g_caps.wall_clock_s)
        return;
    const std::chrono::duration<double> el = std::chrono::steady_clock::now() - g_start;
    if (el.count() > *g_caps.wall_clock_s)
        throw ResourceError("wall-clock cap of " + std::to_string(*g_caps.wall_clock_s) +
                            " s exceeded in " + std::string(where));
}

void require_cells(std::size_t n, std::string_view what)
{
    if (n > g_caps.max_cells)
        throw ResourceError(std::string(what) + ": " + std::to_string(n) +
                            " cells exceeds cap " + std::to_string(g_caps.max_cells));
}

unsigned thread_count() { return g_threads.load(); }

void set_thread_count(unsigned n) { g_threads.store(std::max(1u, n)); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const unsigned t = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (t <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(t);
    for (unsigned k = 0; k < t; ++k) {
        pool.emplace_back([&] {
            try {
                for (;;) {
                    // chunks keep contention low; order of visits is irrelevant
                    const std::size_t lo = next.fetch_add(64);
                    if (lo >= n)
                        break;
                    const std::size_t hi = std::min(n, lo + 64);
                    for (std::size_t i = lo; i < hi; ++i)
                        body(i);
                }
            } catch (...) {
                std::lock_guard lk(err_mu);
                if (!err)
                    err = std::current_exception();
                next.store(n);
            }
        });
    }
    for (auto& th : pool)
        th.join();
    if (err)
        std::rethrow_exception(err);
}

} // namespace gshift
