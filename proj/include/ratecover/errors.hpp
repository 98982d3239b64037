#pragma once

#include <stdexcept>
#include <string>

namespace ratecover {

// A count of zero in either group: the ratio estimate degenerates and no
// interval is produced, by policy.
class separation_error : public std::runtime_error {
public:
    explicit separation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An iterative routine failed to converge or produced a non-finite value.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ratecover
