// Enumeration budgets. Every exact counter takes a budget parameter; 0 means
// "use the default", which is WEAVE_BUDGET from the environment or 1e8.
#pragma once

#include <cstdint>
#include <cstdlib>

namespace weave {

inline std::uint64_t default_budget() {
    static const std::uint64_t cached = [] {
        if (const char* env = std::getenv("WEAVE_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end != env && v > 0) return static_cast<std::uint64_t>(v);
        }
        return static_cast<std::uint64_t>(100'000'000ULL);
    }();
    return cached;
}

inline std::uint64_t resolve_budget(std::uint64_t requested) {
    return requested == 0 ? default_budget() : requested;
}

}  // namespace weave
