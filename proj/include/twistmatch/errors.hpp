#pragma once

#include <stdexcept>
#include <string>

namespace twistmatch {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A rational prime outside the working set S: even, ramified, or dividing
// the polynomial discriminant.
struct ExcludedPrime : Error {
    using Error::Error;
};

struct DenominatorNotCoprime : Error {
    using Error::Error;
};

struct UnsupportedDegree : Error {
    using Error::Error;
};

struct BadReduction : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct MissingPrime : Error {
    using Error::Error;
};

// Ramified order-l character component requested at a prime that has no
// ramified degree-l extension in the supported regime.
struct AdmissibilityError : Error {
    using Error::Error;
};

struct DegreeMismatch : Error {
    using Error::Error;
};

struct InconsistentOracle : Error {
    using Error::Error;
};

struct InductionDataMissing : Error {
    using Error::Error;
};

struct PrecisionExhausted : Error {
    using Error::Error;
};

struct ArithmeticOverflow : Error {
    using Error::Error;
};

}  // namespace twistmatch
