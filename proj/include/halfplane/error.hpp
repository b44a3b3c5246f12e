#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace halfplane {

enum class ErrorKind {
    InvalidExponent,
    BranchDegenerate,
    NotWellPosed,
    NotInvertible,
    QuadratureFailure,
    NonConvergent,
    SingularityOnBoundary,
    NonIntegrable,
    TailTooSlow,
    WindowLeak,
    DomainError,
    OutOfBoundednessRange,
    EvaluationOnInterface,
    GridTooCoarse,
    OscillatoryNonConvergence,
    InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::BranchDegenerate: return "BranchDegenerate";
    case ErrorKind::NotWellPosed: return "NotWellPosed";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::SingularityOnBoundary: return "SingularityOnBoundary";
    case ErrorKind::NonIntegrable: return "NonIntegrable";
    case ErrorKind::TailTooSlow: return "TailTooSlow";
    case ErrorKind::WindowLeak: return "WindowLeak";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::OutOfBoundednessRange: return "OutOfBoundednessRange";
    case ErrorKind::EvaluationOnInterface: return "EvaluationOnInterface";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::OscillatoryNonConvergence: return "OscillatoryNonConvergence";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// True for errors that stem from the parameters rather than the numerics.
    [[nodiscard]] bool is_configuration_error() const noexcept {
        switch (kind_) {
        case ErrorKind::InvalidExponent:
        case ErrorKind::BranchDegenerate:
        case ErrorKind::NotWellPosed:
        case ErrorKind::NotInvertible:
        case ErrorKind::DomainError:
        case ErrorKind::OutOfBoundednessRange:
        case ErrorKind::InvalidArgument:
            return true;
        default:
            return false;
        }
    }

private:
    ErrorKind kind_;
};

}  // namespace halfplane
