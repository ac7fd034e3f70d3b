#pragma once

#include <stdexcept>
#include <string>

namespace dichotomy {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeEntry : Error {
    int i, j;
    NegativeEntry(int i_, int j_, double value)
        : Error("negative entry at (" + std::to_string(i_) + "," + std::to_string(j_) +
                "): " + std::to_string(value)),
          i(i_), j(j_) {}
};

struct RowSumViolation : Error {
    int i;
    double sum;
    RowSumViolation(int i_, double sum_)
        : Error("row " + std::to_string(i_) + " sums to " + std::to_string(sum_)), i(i_), sum(sum_) {}
};

struct InvalidRange : Error {
    InvalidRange(long k, long m)
        : Error("invalid step range: m=" + std::to_string(m) + " < k=" + std::to_string(k)) {}
};

struct NoConvergence : Error {
    int max_iter;
    explicit NoConvergence(int max_iter_)
        : Error("power iteration did not stabilize within " + std::to_string(max_iter_) +
                " iterations"),
          max_iter(max_iter_) {}
};

struct NoCycle : Error {
    using Error::Error;
};

struct PreconditionViolated : Error {
    using Error::Error;
};

struct NotPrimitive : Error {
    using Error::Error;
};

struct NotFoundWithinCap : Error {
    using Error::Error;
};

struct NotBidirectional : Error {
    long k;
    int i, j;
    NotBidirectional(long k_, int i_, int j_)
        : Error("support not symmetric at step " + std::to_string(k_) + ": (" + std::to_string(i_) +
                "," + std::to_string(j_) + ")"),
          k(k_), i(i_), j(j_) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct HorizonTooShort : Error {
    using Error::Error;
};

struct DegenerateSet : Error {
    using Error::Error;
};

struct YNotInSet : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    std::string field;
    explicit SchemaError(std::string field_, const std::string& reason = "")
        : Error("schema error at '" + field_ + "'" + (reason.empty() ? "" : ": " + reason)),
          field(std::move(field_)) {}
};

struct SeedMissing : Error {
    using Error::Error;
};

}  // namespace dichotomy
