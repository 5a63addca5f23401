#pragma once

#include <stdexcept>
#include <string>

namespace o2o {

// Error categories map onto CLI exit codes: ConfigError -> 1,
// InvariantViolation -> 2, IoError -> 3.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A simulation-state invariant failed. Runs abort rather than continue
// with corrupted state.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input data (corpus rows, log lines).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A decision or embedding backend failed after retries. Callers fall back;
// the simulation must keep running.
class BackendError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Backend returned text with no recognizable answer token.
class ResponseParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace o2o
