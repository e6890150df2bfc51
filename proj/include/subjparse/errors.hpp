#ifndef SUBJPARSE_ERRORS_HPP
#define SUBJPARSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace subjparse {

// Bad input files, malformed corpus lines, unknown tags, etc. Maps to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training failed to reach the requested threshold. Maps to exit code 3.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double achieved_pct, int epochs)
        : std::runtime_error(msg), achieved_pct(achieved_pct), epochs(epochs) {}
    double achieved_pct;
    int epochs;
};

}  // namespace subjparse

#endif
