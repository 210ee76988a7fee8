#pragma once

#include <stdexcept>
#include <string>

namespace mcx {

// input violates a structural precondition that no parameter can fix
// (e.g. fiber enumeration on a matrix that is not positively graded)
struct unsupported_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// a configurable cap (fiber members, basis elements, ...) was exceeded
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mcx
