#pragma once

#include <stdexcept>
#include <string>

namespace frontfix {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// Front value reached or crossed zero while assembling coefficients.
class SingularFront : public Error {
public:
    explicit SingularFront(const std::string& what) : Error(what) {}
};

// Scalar front residual has no sign change over the admissible bracket.
class BracketingError : public Error {
public:
    BracketingError(const std::string& what, double f_lo, double f_hi, int time_index)
        : Error(what), f_lo(f_lo), f_hi(f_hi), time_index(time_index) {}
    double f_lo;
    double f_hi;
    int time_index;
};

// Iteration cap exceeded before the residual tolerance was met.
class NonconvergenceError : public Error {
public:
    NonconvergenceError(const std::string& what, double last_sf, double residual_norm,
                        int iterations, int time_index)
        : Error(what), last_sf(last_sf), residual_norm(residual_norm),
          iterations(iterations), time_index(time_index) {}
    double last_sf;
    double residual_norm;
    int iterations;
    int time_index;
};

// Explicit-scheme guard tripped: front left (0, S_f^n].
class InstabilityError : public Error {
public:
    InstabilityError(const std::string& what, int time_index)
        : Error(what), time_index(time_index) {}
    int time_index;
};

// Explicit-scheme guard tripped: |p| exceeded the overflow threshold.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, int time_index)
        : Error(what), time_index(time_index) {}
    int time_index;
};

// Requested asset price maps beyond the truncated boundary x_inf.
class OutOfDomainError : public Error {
public:
    OutOfDomainError(const std::string& what, double asset, double x)
        : Error(what), asset(asset), x(x) {}
    double asset;
    double x;
};

// observed_order called with a value equal to the reference.
class DegenerateOrderError : public Error {
public:
    explicit DegenerateOrderError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

} // namespace frontfix
