#pragma once

#include <stdexcept>
#include <string>

namespace qmem {

// Error categories map one-to-one onto CLI exit codes.
enum class ErrorCode : int {
    invalid_input = 2,
    solver_failure = 3,
    capacity = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Error invalid_input(const std::string& msg) {
    return Error(ErrorCode::invalid_input, msg);
}
inline Error solver_failure(const std::string& msg) {
    return Error(ErrorCode::solver_failure, msg);
}
inline Error capacity_error(const std::string& msg) {
    return Error(ErrorCode::capacity, msg);
}

} // namespace qmem
