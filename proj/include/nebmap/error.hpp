#pragma once

#include <stdexcept>
#include <string>

namespace nebmap {

// Violation of a mathematical precondition (shape mismatch, non-Hermitian
// input, non-PSD coefficient matrix, ...). The CLI maps this to exit code 2,
// as opposed to IO/parse failures which map to exit code 1.
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace nebmap
