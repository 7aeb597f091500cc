#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace loopwalk {

// Base class for every failure the library reports. `code()` is the stable
// machine-readable identifier the CLI puts into its error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define LOOPWALK_ERROR_TYPE(NAME)                       \
    class NAME : public Error {                         \
    public:                                             \
        explicit NAME(const std::string& message)       \
            : Error(#NAME, message) {}                  \
    };

LOOPWALK_ERROR_TYPE(DivisionByZeroFunction)
LOOPWALK_ERROR_TYPE(StarDiverges)
LOOPWALK_ERROR_TYPE(PoleAtZero)
LOOPWALK_ERROR_TYPE(EmptyGenerators)
LOOPWALK_ERROR_TYPE(ClosureCapExceeded)
LOOPWALK_ERROR_TYPE(UnknownLabel)
LOOPWALK_ERROR_TYPE(VertexCapExceeded)
LOOPWALK_ERROR_TYPE(NotSimplePath)
LOOPWALK_ERROR_TYPE(UspViolation)
LOOPWALK_ERROR_TYPE(RecursionCapExceeded)
LOOPWALK_ERROR_TYPE(ProbsNotNormalized)
LOOPWALK_ERROR_TYPE(NonPositiveProbability)
LOOPWALK_ERROR_TYPE(SingularSystem)
LOOPWALK_ERROR_TYPE(ParseError)
LOOPWALK_ERROR_TYPE(ValidationError)

#undef LOOPWALK_ERROR_TYPE

} // namespace loopwalk
