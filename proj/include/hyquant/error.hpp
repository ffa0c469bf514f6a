// Copyright 2026 The hyquant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyq {

enum class ErrorCode {
    BadParam,
    CapExceeded,
    DimMismatch,
    ParseError,
    TooManyElectrons,
    MalformedComponent,
    BadConstant,
    NoSlack,
    NotAntisymmetric,
    MixedParticleNumber,
    RetryBudgetExceeded,
    BasisMismatch,
    NotUnitary,
    DisciplineMismatch,
    BadDimension,
    NotIsometry,
    IndexOutOfRange,
    SectorEmpty,
    UnboundParameter,
    DegenerateGrid,
    SinkUnwritable,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::BadParam: return "BadParam";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::DimMismatch: return "DimMismatch";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::TooManyElectrons: return "TooManyElectrons";
        case ErrorCode::MalformedComponent: return "MalformedComponent";
        case ErrorCode::BadConstant: return "BadConstant";
        case ErrorCode::NoSlack: return "NoSlack";
        case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
        case ErrorCode::MixedParticleNumber: return "MixedParticleNumber";
        case ErrorCode::RetryBudgetExceeded: return "RetryBudgetExceeded";
        case ErrorCode::BasisMismatch: return "BasisMismatch";
        case ErrorCode::NotUnitary: return "NotUnitary";
        case ErrorCode::DisciplineMismatch: return "DisciplineMismatch";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::NotIsometry: return "NotIsometry";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::SectorEmpty: return "SectorEmpty";
        case ErrorCode::UnboundParameter: return "UnboundParameter";
        case ErrorCode::DegenerateGrid: return "DegenerateGrid";
        case ErrorCode::SinkUnwritable: return "SinkUnwritable";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace hyq
