#pragma once

#include <stdexcept>
#include <string>

namespace histarith {

// Malformed or inconsistent input data: unparsable CSV, document invariant
// violations, samples too small to bin, pairwise size over the cap.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

// Mathematically out-of-domain request: nonpositive support for mul/div,
// zero divisor in a quotient.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace histarith
