#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace gshift {

struct ResourceCaps {
    std::size_t max_ball = 10'000'000;          // elements per memoized ball
    std::size_t max_cells = 50'000'000;         // cells in a single shape or window
    std::uint64_t max_enumeration = 200'000'000; // search nodes / enumerated patterns
    std::optional<double> wall_clock_s;         // per top-level run
};

const ResourceCaps& caps();
void set_caps(const ResourceCaps& c);

// Restarts the wall-clock budget; called by drivers at the start of a run.
void reset_clock();
// Throws ResourceError once the wall-clock cap is exceeded.
void check_clock(std::string_view where);

void require_cells(std::size_t n, std::string_view what);

unsigned thread_count();
void set_thread_count(unsigned n);

// Runs body(i) for i in [0, n) on thread_count() threads. Each index is
// visited exactly once; callers write to per-index slots, so results do not
// depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace gshift
