#pragma once

#include <stdexcept>
#include <string>

namespace aqts {

enum class ErrorCode {
    // ingest
    kMalformedLine,
    kAdcOutOfRange,
    kDuplicateTimestamp,
    kLengthMismatch,
    kEmptyInput,
    // resample
    kBlockTooLarge,
    kWindowTooLarge,
    kEvenWindow,
    // distribution
    kEmptySeries,
    kDegenerateRange,
    kNonPositiveValue,
    kDegenerateFit,
    kTooFewBlocks,
    kAllZeroSigma,
    // correlation / armodel
    kDegenerateVariance,
    kLagTooLarge,
    kNumericalBreakdown,
    kSingularDesign,
    kSeriesTooShort,
    kHistoryTooShort,
    // drm
    kInsufficientData,
    // spectral
    kBandTooNarrow,
    kZeroPowerInBand,
    // synth
    kNonStationaryPhi,
    kSubNyquistPeriod,
    // cli / report
    kIoError,
    kUnknownFormat,
    kConfigError,
};

// Exit-code buckets used by the CLI: 2 config, 3 data, 4 I/O.
enum class ErrorCategory { kConfig = 2, kData = 3, kIo = 4 };

constexpr const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::kMalformedLine: return "MALFORMED_LINE";
        case ErrorCode::kAdcOutOfRange: return "ADC_OUT_OF_RANGE";
        case ErrorCode::kDuplicateTimestamp: return "DUPLICATE_TIMESTAMP";
        case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
        case ErrorCode::kEmptyInput: return "EMPTY_INPUT";
        case ErrorCode::kBlockTooLarge: return "BLOCK_TOO_LARGE";
        case ErrorCode::kWindowTooLarge: return "WINDOW_TOO_LARGE";
        case ErrorCode::kEvenWindow: return "EVEN_WINDOW";
        case ErrorCode::kEmptySeries: return "EMPTY_SERIES";
        case ErrorCode::kDegenerateRange: return "DEGENERATE_RANGE";
        case ErrorCode::kNonPositiveValue: return "NON_POSITIVE_VALUE";
        case ErrorCode::kDegenerateFit: return "DEGENERATE_FIT";
        case ErrorCode::kTooFewBlocks: return "TOO_FEW_BLOCKS";
        case ErrorCode::kAllZeroSigma: return "ALL_ZERO_SIGMA";
        case ErrorCode::kDegenerateVariance: return "DEGENERATE_VARIANCE";
        case ErrorCode::kLagTooLarge: return "LAG_TOO_LARGE";
        case ErrorCode::kNumericalBreakdown: return "NUMERICAL_BREAKDOWN";
        case ErrorCode::kSingularDesign: return "SINGULAR_DESIGN";
        case ErrorCode::kSeriesTooShort: return "SERIES_TOO_SHORT";
        case ErrorCode::kHistoryTooShort: return "HISTORY_TOO_SHORT";
        case ErrorCode::kInsufficientData: return "INSUFFICIENT_DATA";
        case ErrorCode::kBandTooNarrow: return "BAND_TOO_NARROW";
        case ErrorCode::kZeroPowerInBand: return "ZERO_POWER_IN_BAND";
        case ErrorCode::kNonStationaryPhi: return "NON_STATIONARY_PHI";
        case ErrorCode::kSubNyquistPeriod: return "SUB_NYQUIST_PERIOD";
        case ErrorCode::kIoError: return "IO_ERROR";
        case ErrorCode::kUnknownFormat: return "UNKNOWN_FORMAT";
        case ErrorCode::kConfigError: return "CONFIG_ERROR";
    }
    return "UNKNOWN";
}

constexpr ErrorCategory error_category(ErrorCode c) {
    switch (c) {
        case ErrorCode::kIoError:
            return ErrorCategory::kIo;
        case ErrorCode::kUnknownFormat:
        case ErrorCode::kConfigError:
            return ErrorCategory::kConfig;
        default:
            return ErrorCategory::kData;
    }
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }
    ErrorCategory category() const { return error_category(code_); }

private:
    ErrorCode code_;
};

}  // namespace aqts
