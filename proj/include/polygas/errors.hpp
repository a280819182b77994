#pragma once

#include <stdexcept>
#include <string>

namespace polygas {

// Enumeration or expansion size beyond the configured cap.
class size_error : public std::runtime_error {
public:
    explicit size_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested tolerance could not be certified; carries the best estimate.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double best_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate) {}
    double best_estimate() const { return best_estimate_; }

private:
    double best_estimate_;
};

// Operation not defined for this object (e.g. pointwise derivative of a hard step).
class unsupported_operation : public std::logic_error {
public:
    explicit unsupported_operation(const std::string& what) : std::logic_error(what) {}
};

// Root finder failed to converge; message identifies the branch index.
class root_error : public std::runtime_error {
public:
    explicit root_error(const std::string& what) : std::runtime_error(what) {}
};

class singular_series_error : public std::runtime_error {
public:
    explicit singular_series_error(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at (or too close to) a point where the function is
// not smooth enough for the chosen route.
class non_smooth_point_error : public std::domain_error {
public:
    explicit non_smooth_point_error(const std::string& what) : std::domain_error(what) {}
};

}  // namespace polygas
