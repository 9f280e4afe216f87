#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hh {

enum class ErrorCode {
    composition_nonzero,
    out_of_range,
    size_limit,
    not_a_matching,
    non_invertible_weight,
    cycle_detected,
    edge_not_in_differential,
    mixed_labels,
    unsupported_ring,
    non_commutative_base,
};

inline const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::composition_nonzero:
        return "CompositionNonzero";
    case ErrorCode::out_of_range:
        return "OutOfRange";
    case ErrorCode::size_limit:
        return "SizeLimit";
    case ErrorCode::not_a_matching:
        return "NotAMatching";
    case ErrorCode::non_invertible_weight:
        return "NonInvertibleWeight";
    case ErrorCode::cycle_detected:
        return "CycleDetected";
    case ErrorCode::edge_not_in_differential:
        return "EdgeNotInDifferential";
    case ErrorCode::mixed_labels:
        return "MixedLabels";
    case ErrorCode::unsupported_ring:
        return "UnsupportedRing";
    case ErrorCode::non_commutative_base:
        return "NonCommutativeBase";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code)
    {
    }
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

/// A builder refused to materialize a degree whose basis is too large.
class SizeLimitError : public Error {
public:
    SizeLimitError(int degree, std::size_t count, std::size_t limit)
        : Error(ErrorCode::size_limit, "degree " + std::to_string(degree) + " needs "
                                           + std::to_string(count) + " basis elements (limit "
                                           + std::to_string(limit) + ")"),
          degree_(degree), count_(count)
    {
    }
    int degree() const { return degree_; }
    std::size_t count() const { return count_; }

private:
    int degree_;
    std::size_t count_;
};

} // namespace hh
