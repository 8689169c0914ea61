#pragma once

#include <stdexcept>
#include <string>

namespace ospr {

// Error hierarchy shared by all modules. The CLI maps these onto process
// exit codes (config 1, I/O 2, numerics 3).
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct InvalidArgument : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

struct FormatError : IoError {
    using IoError::IoError;
};

struct ConfigError : Error {
    using Error::Error;
};

struct ConvergenceError : Error {
    using Error::Error;
};

} // namespace ospr
