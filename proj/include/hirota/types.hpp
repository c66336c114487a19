#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hirota {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

struct Equation {
    double alpha = 1.0;
    double beta = 1.0;
};

enum class ErrorCode {
    InvalidArgument,
    MassDrift,
    EdgeContamination,
    TraceGridMismatch,
    OutOfWindow,
    StepTooCoarse,
    DecayCutoffViolation,
    TailTruncation,
    DivisionNearZero,
    GuardViolation,
    OutsideInterval,
    QuadratureNotConverged,
    OnBranchCut,
    PoleInput,
    RayMismatch,
    RouteMismatch,
    DegenerateFit,
    Io,
};

std::string_view to_string(ErrorCode code);

// %.3e, for messages carrying small magnitudes
std::string sci(double v);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace hirota
