#pragma once

#include <stdexcept>
#include <string>

namespace isomdp {

/// Model arrays are inconsistent with the declared dimensions.
struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Operation requires an unconstrained model but constraints are present.
struct ConstrainedModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// KKT factorization failed (rank-deficient constraint matrix).
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Subgradient direction is numerically zero; the caller should skip the step.
struct ZeroDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidProbability : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance sampling exhausted its attempt budget.
struct GenerationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Model/policy file failed to parse or validate; message is path-qualified.
struct ModelParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace isomdp
