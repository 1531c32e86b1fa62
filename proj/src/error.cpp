#include "mosco1d/error.hpp"
#include "mosco1d/interval.hpp"

#include <cstdio>

namespace mosco1d {

const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OracleToleranceExceeded: return "OracleToleranceExceeded";
    case ErrorCode::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::InvalidMass: return "InvalidMass";
    case ErrorCode::RequiresOpenSet: return "RequiresOpenSet";
    case ErrorCode::NotAbsolutelyContinuous: return "NotAbsolutelyContinuous";
    case ErrorCode::MismatchedSpeed: return "MismatchedSpeed";
    case ErrorCode::NotHomeomorphism: return "NotHomeomorphism";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::AdmissibilityFailure: return "AdmissibilityFailure";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

bool is_numerical(ErrorCode code)
{
    switch (code) {
    case ErrorCode::OracleToleranceExceeded:
    case ErrorCode::ToleranceUnreachable:
    case ErrorCode::NotConverged:
    case ErrorCode::NotAbsolutelyContinuous:
    case ErrorCode::DegenerateGrid:
    case ErrorCode::SingularSystem:
    case ErrorCode::AdmissibilityFailure:
        return true;
    default:
        return false;
    }
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

const char* to_string(Side side) { return side == Side::Lower ? "lower" : "upper"; }

Interval::Interval(double a, double b, double e) : a_(a), b_(b), e_(e)
{
    if (std::isnan(a) || std::isnan(b) || !std::isfinite(e))
        fail(ErrorCode::InvalidArgument, "interval endpoints must be numbers, base point finite");
    if (!(a < b))
        fail(ErrorCode::InvalidArgument, "degenerate interval (" + format_extended(a) + ", " +
                                             format_extended(b) + ")");
    if (!(a < e && e < b))
        fail(ErrorCode::InvalidArgument, "base point " + format_extended(e) + " not inside " +
                                             "(" + format_extended(a) + ", " + format_extended(b) + ")");
}

std::string Interval::describe() const
{
    return "(" + format_extended(a_) + ", " + format_extended(b_) + "), e=" + format_extended(e_);
}

std::string format_extended(double x)
{
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace mosco1d
