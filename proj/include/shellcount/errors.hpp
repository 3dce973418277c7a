#ifndef SHELLCOUNT_ERRORS_HPP
#define SHELLCOUNT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace shellcount {

// Bad argument (x <= 0, point outside a function's domain, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// A result does not fit in a double; the log-scaled entry points still work.
struct overflow_error : std::overflow_error {
    using std::overflow_error::overflow_error;
};

// Series evaluation whose cancellation makes the result meaningless.
struct unreliable_evaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Asymptotic formula requested outside its window of validity.
struct out_of_regime : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Iteration failed to converge, bracket lost, simplicity alarm, ...
struct numerical_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration size limit exceeded.
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace shellcount

#endif
