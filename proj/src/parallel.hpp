#pragma once

#include <exception>

namespace tfim::detail {

// Exceptions must not escape an OpenMP region; keep the first one and rethrow after the loop.
class ExceptionTrap {
public:
    template <class F>
    void run(F&& f) {
        try {
            f();
        } catch (...) {
#pragma omp critical(tfim_exception_trap)
            if (!ptr_) ptr_ = std::current_exception();
        }
    }
    void rethrow() const {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::exception_ptr ptr_;
};

}  // namespace tfim::detail
