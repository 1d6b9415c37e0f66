#pragma once

#include <chrono>
#include <cstdint>

#include "snarklab/error.hpp"

namespace snarklab {

// Cooperative per-thread deadline. Long searches call tick() in their inner loops.
namespace budget_detail {
inline thread_local bool active = false;
inline thread_local std::chrono::steady_clock::time_point deadline{};
inline thread_local std::uint32_t counter = 0;
}  // namespace budget_detail

inline void tick() {
    if (!budget_detail::active) return;
    if ((++budget_detail::counter & 0xfff) != 0) return;
    if (std::chrono::steady_clock::now() > budget_detail::deadline)
        throw Error(ErrorKind::Timeout, "time budget exhausted");
}

class ScopedDeadline {
public:
    explicit ScopedDeadline(double seconds) : was_active_(budget_detail::active), old_(budget_detail::deadline) {
        if (seconds > 0) {
            budget_detail::active = true;
            budget_detail::deadline = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
        }
    }
    ~ScopedDeadline() {
        budget_detail::active = was_active_;
        budget_detail::deadline = old_;
    }
    ScopedDeadline(const ScopedDeadline&) = delete;
    ScopedDeadline& operator=(const ScopedDeadline&) = delete;

private:
    bool was_active_;
    std::chrono::steady_clock::time_point old_;
};

}  // namespace snarklab
