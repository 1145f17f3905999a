#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mfact {

/// Worker count: an explicit request wins, then MFACT_THREADS, then the
/// hardware concurrency.
inline unsigned resolve_threads(unsigned requested = 0)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("MFACT_THREADS")) {
        try {
            long v = std::stol(env);
            if (v > 0)
                return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits [0, total) into `workers` contiguous ranges and runs
/// body(worker, begin, end) on each. Results must be merged by the caller in
/// worker order, which keeps reductions independent of scheduling.
template <typename Body>
void parallel_ranges(std::uint64_t total, unsigned workers, Body&& body)
{
    workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, total)));
    auto bound = [&](unsigned w) { return total * w / workers; };
    if (workers == 1) {
        body(0u, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                body(w, bound(w), bound(w + 1));
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace mfact
