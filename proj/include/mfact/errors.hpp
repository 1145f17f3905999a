#pragma once

#include <stdexcept>
#include <string>

namespace mfact {

/// Input that does not describe a well-formed object (bad label, wrong length).
struct validation_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Text or JSON that could not be parsed.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive work refused because the size exceeds a hard cap.
struct cap_error : std::length_error {
    using std::length_error::length_error;
};

/// Well-formed input outside the domain of the operation (e.g. a non-minimal factorization).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Internal state that contradicts an algorithm's invariants.
struct consistency_error : std::logic_error {
    using std::logic_error::logic_error;
};

namespace detail {

inline void require_cap(int n, int lo, int hi, const std::string& what, const std::string& hint = {})
{
    if (n < lo || n > hi) {
        std::string msg = what + ": n=" + std::to_string(n) + " outside supported range " + std::to_string(lo) +
                          ".." + std::to_string(hi);
        if (!hint.empty())
            msg += " (" + hint + ")";
        throw cap_error(msg);
    }
}

} // namespace detail
} // namespace mfact
