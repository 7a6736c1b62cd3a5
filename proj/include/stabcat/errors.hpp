#pragma once

#include <stdexcept>
#include <string>

namespace stabcat {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidRelationError : Error {
    using Error::Error;
};
struct InfiniteDimensionalError : Error {
    using Error::Error;
};
struct AlgebraMismatchError : Error {
    using Error::Error;
};
struct ShapeMismatchError : Error {
    using Error::Error;
};
struct SourceMismatchError : Error {
    using Error::Error;
};
struct TargetMismatchError : Error {
    using Error::Error;
};
struct BudgetExceededError : Error {
    using Error::Error;
};
struct NotStableEpiError : Error {
    using Error::Error;
};
struct NotStrongMonoError : Error {
    using Error::Error;
};
struct NotProjectiveGeneratorError : Error {
    using Error::Error;
};
struct NotMonoError : Error {
    using Error::Error;
};
struct SourceNotInTError : Error {
    using Error::Error;
};
struct NotApplicableError : Error {
    using Error::Error;
};
struct UnknownScenarioError : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct UnknownReferenceError : Error {
    using Error::Error;
};

}  // namespace stabcat
