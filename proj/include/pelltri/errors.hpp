#pragma once

#include <stdexcept>
#include <string>

namespace pelltri {

// D is a perfect square, so sqrt(D) is rational and there is no Pell structure.
struct PerfectSquareError : std::invalid_argument {
    explicit PerfectSquareError(const std::string& msg) : std::invalid_argument(msg) {}
};

// k is a perfect square (or < 2): the triangular-multiple problem degenerates.
struct SquareKError : std::invalid_argument {
    explicit SquareKError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A Pell solution with an even coordinate cannot map back to integer (xi, t).
struct ParityError : std::invalid_argument {
    explicit ParityError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Too few solutions requested to exercise the stride-2r recurrences.
struct InsufficientDepthError : std::invalid_argument {
    explicit InsufficientDepthError(const std::string& msg) : std::invalid_argument(msg) {}
};

// s violates a family rule's congruence condition or lands on an excluded k.
struct InadmissibleSError : std::invalid_argument {
    explicit InadmissibleSError(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace pelltri
