#pragma once
#include <stdexcept>
#include <string>

namespace levyopt {

// Domain-specific failures. Everything derives from std::runtime_error so the
// C wrapper can map them to status codes in one catch ladder.
struct IllegalTriplet : std::runtime_error {
    explicit IllegalTriplet(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedModel : std::runtime_error {
    explicit UnsupportedModel(const std::string& msg) : std::runtime_error(msg) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegeneratePath : std::runtime_error {
    explicit DegeneratePath(const std::string& msg) : std::runtime_error(msg) {}
};

struct MeanUndefined : std::runtime_error {
    explicit MeanUndefined(const std::string& msg) : std::runtime_error(msg) {}
};

struct TooFewSamples : std::runtime_error {
    explicit TooFewSamples(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateEstimate : std::runtime_error {
    explicit DegenerateEstimate(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BadArgument : std::runtime_error {
    explicit BadArgument(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace levyopt
