#pragma once

#include <stdexcept>
#include <string>

namespace ncw {

// Input that cannot be parsed or fails a precondition (CLI exit status 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A mathematical contract that should hold was violated (CLI exit status 1).
struct contract_error : std::runtime_error {
    explicit contract_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ncw
