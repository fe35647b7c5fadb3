#pragma once

#include <stdexcept>
#include <string>

namespace zml {

/// Base of every error raised by the library. `category()` is a stable
/// machine-readable tag used in failure reports.
class Error : public std::runtime_error {
public:
    Error(const char* category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    const char* category() const noexcept { return category_; }

private:
    const char* category_;
};

#define ZML_DEFINE_ERROR(Name, tag)                                          \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(tag, what) {}         \
    }

// Input outside the mathematical domain of an operation.
ZML_DEFINE_ERROR(DomainError, "domain");
// Floating-point overflow or underflow of an extended-precision result.
ZML_DEFINE_ERROR(SaturationError, "saturation");
// An iteration failed to converge or produced an unusable value.
ZML_DEFINE_ERROR(NumericError, "numeric");
// A tiny |zeta'| would blow up a negative power.
ZML_DEFINE_ERROR(NumericHazardError, "numeric_hazard");
// Memory budget, table size, or integer width exceeded.
ZML_DEFINE_ERROR(ResourceError, "resource");
// Zero counting could not be reconciled or a range is not certified.
ZML_DEFINE_ERROR(CertificationError, "certification");
// Zero-cache file integrity.
ZML_DEFINE_ERROR(ChecksumError, "checksum");
ZML_DEFINE_ERROR(VersionError, "version");
ZML_DEFINE_ERROR(FormatError, "format");
ZML_DEFINE_ERROR(RangeOverlapError, "range_overlap");
ZML_DEFINE_ERROR(RangeGapError, "range_gap");
// Evaluation point coincides with a zero ordinate.
ZML_DEFINE_ERROR(AmbiguityError, "ambiguity");
// Window needs neighbouring zeros that the cache does not hold.
ZML_DEFINE_ERROR(PaddingError, "padding");
// Least-squares design too narrow to fit.
ZML_DEFINE_ERROR(ConditioningError, "conditioning");
// No parameter ladder satisfies the constraints.
ZML_DEFINE_ERROR(InfeasibleError, "infeasible");
// A sampled inequality was violated; message carries the witness.
ZML_DEFINE_ERROR(PropertyError, "property");
// Invalid run configuration (CLI exit status 2).
ZML_DEFINE_ERROR(ConfigError, "config");

#undef ZML_DEFINE_ERROR

}  // namespace zml
