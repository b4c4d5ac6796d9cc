#ifndef IDD_ERRORS_HPP
#define IDD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace idd {

// Base class for all library errors so callers can catch idd failures
// separately from generic std exceptions.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class argument_error : public error {
public:
    explicit argument_error(const std::string& msg) : error(msg) {}
};

class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

class overflow_error : public error {
public:
    explicit overflow_error(const std::string& msg) : error(msg) {}
};

// Sum(n) == Sum(k): the volume ratio is 1 and the root collapses to d -> 0.
class scale_too_small_error : public error {
public:
    explicit scale_too_small_error(const std::string& msg) : error(msg) {}
};

// Observed ratio lies below the volume ratio at the upper dimension bound.
class dimension_out_of_range_error : public error {
public:
    explicit dimension_out_of_range_error(const std::string& msg) : error(msg) {}
};

// Sum(k) == 0: nothing observed within the probe radius.
class no_neighbors_error : public error {
public:
    explicit no_neighbors_error(const std::string& msg) : error(msg) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& msg) : error(msg) {}
};

} // namespace idd

#endif
