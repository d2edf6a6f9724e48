#pragma once

#include <chrono>
#include <cstdint>

namespace prpipe {

// Monotonic wall-clock stopwatch; all kernel timings go through this.
class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// Throughput in units of work per second; 0 when there is no work or no
// measurable elapsed time.
inline double rate_per_second(std::int64_t work, double elapsed_seconds) {
    if (work <= 0 || elapsed_seconds <= 0.0) return 0.0;
    return static_cast<double>(work) / elapsed_seconds;
}

}  // namespace prpipe
