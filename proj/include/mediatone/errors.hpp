#pragma once

#include <stdexcept>
#include <string>

namespace mediatone {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input could not be parsed (malformed file, bad schema, bad value).
struct ParseError : Error {
    using Error::Error;
};

// corpus
struct NoArticles : Error {
    using Error::Error;
};

// lexicons
struct NotScored : Error {
    using Error::Error;
};

// scoring
struct InsufficientText : Error {
    using Error::Error;
};

// stats
struct EmptySample : Error {
    using Error::Error;
};
struct GroupMissing : Error {
    using Error::Error;
};
struct MissingComparison : Error {
    using Error::Error;
};

// classifier
struct DegenerateLabels : Error {
    using Error::Error;
};
struct EmptyMatrix : Error {
    using Error::Error;
};
struct ColumnMissing : Error {
    using Error::Error;
};
struct NumericalInput : Error {
    using Error::Error;
};

}  // namespace mediatone
