#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>

namespace purcell {

// Failure of one sweep point; `index` is the grid position.
class SweepError : public std::runtime_error {
public:
    SweepError(std::size_t index, std::exception_ptr cause, const std::string& what)
        : std::runtime_error("sweep point " + std::to_string(index) + ": " + what), index_(index), cause_(cause) {}

    std::size_t index() const noexcept { return index_; }
    std::exception_ptr cause() const noexcept { return cause_; }

private:
    std::size_t index_;
    std::exception_ptr cause_;
};

// PURCELL_WORKERS if set and positive, else std::thread::hardware_concurrency() (at least 1).
std::size_t default_worker_count();

// Calls body(i) for i in [0, n) on up to `workers` threads (0 = default).
// Each index is processed exactly once; the failure with the lowest index is
// rethrown as SweepError after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, std::size_t workers = 0);

} // namespace purcell
