#pragma once

#include <stdexcept>
#include <string>

namespace mosco1d {

enum class ErrorCode {
    InvalidArgument,
    OutOfDomain,
    OracleToleranceExceeded,
    ToleranceUnreachable,
    NotConverged,
    UnsupportedRepresentation,
    InvalidMass,
    RequiresOpenSet,
    NotAbsolutelyContinuous,
    MismatchedSpeed,
    NotHomeomorphism,
    DegenerateGrid,
    SingularSystem,
    AdmissibilityFailure,
    UnknownExample,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// True for failures of the numerical machinery (as opposed to bad input).
bool is_numerical(ErrorCode code);

[[noreturn]] void fail(ErrorCode code, const std::string& what);

} // namespace mosco1d
