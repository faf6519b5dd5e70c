#pragma once

#include <stdexcept>

namespace dgs {

// Rejected input: bad graph or game data, malformed permutations, schema
// violations. Maps to exit code 1 in the CLI.
class validation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A size guard refused a factorial-cost operation. Overridable where the
// operation says so. Maps to exit code 2 in the CLI.
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An internal consistency check failed (count overflow, engine disagreement
// under self-check). Maps to exit code 3 in the CLI.
class internal_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace dgs
