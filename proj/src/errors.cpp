#include "hirota/mat2.hpp"
#include "hirota/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hirota {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::MassDrift: return "MassDrift";
        case ErrorCode::EdgeContamination: return "EdgeContamination";
        case ErrorCode::TraceGridMismatch: return "TraceGridMismatch";
        case ErrorCode::OutOfWindow: return "OutOfWindow";
        case ErrorCode::StepTooCoarse: return "StepTooCoarse";
        case ErrorCode::DecayCutoffViolation: return "DecayCutoffViolation";
        case ErrorCode::TailTruncation: return "TailTruncation";
        case ErrorCode::DivisionNearZero: return "DivisionNearZero";
        case ErrorCode::GuardViolation: return "GuardViolation";
        case ErrorCode::OutsideInterval: return "OutsideInterval";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::OnBranchCut: return "OnBranchCut";
        case ErrorCode::PoleInput: return "PoleInput";
        case ErrorCode::RayMismatch: return "RayMismatch";
        case ErrorCode::RouteMismatch: return "RouteMismatch";
        case ErrorCode::DegenerateFit: return "DegenerateFit";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

Mat2 Mat2::inverse() const {
    const cplx d = det();
    return {m22 / d, -m12 / d, -m21 / d, m11 / d};
}

double max_abs(const Mat2& a) {
    return std::max({std::abs(a.m11), std::abs(a.m12), std::abs(a.m21), std::abs(a.m22)});
}

Mat2 expm_tracefree(const Mat2& omega) {
    const cplx s2 = -omega.det();
    const cplx s = std::sqrt(s2);
    cplx ch, shc;
    if (std::abs(s) < 1e-4) {
        ch = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
        shc = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
    } else {
        ch = std::cosh(s);
        shc = std::sinh(s) / s;
    }
    return {ch + shc * omega.m11, shc * omega.m12, shc * omega.m21, ch + shc * omega.m22};
}

}  // namespace hirota
