#ifndef HYPERROB_THREADING_HPP
#define HYPERROB_THREADING_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hyperrob {

/// Runs fn(i) for i in [0, count), striped over `threads` workers. Callers
/// write results into per-index slots, so outputs are independent of the
/// worker count. The first worker exception is rethrown after the join.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(threads, count);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t worker = 0; worker < workers; ++worker) {
        pool.emplace_back([&fn, &errors, worker, workers, count]() {
            try {
                for (std::size_t i = worker; i < count; i += workers) fn(i);
            } catch (...) {
                errors[worker] = std::current_exception();
            }
        });
    }
    for (auto& thread : pool) thread.join();
    for (const auto& error : errors) {
        if (error) std::rethrow_exception(error);
    }
}

} // namespace hyperrob

#endif // HYPERROB_THREADING_HPP
