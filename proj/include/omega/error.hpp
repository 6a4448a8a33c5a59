#pragma once

#include <stdexcept>
#include <string>

namespace omega {

enum class ErrorKind {
    EmptyAlphabet,
    InvalidAlphabet,
    IncompleteTransition,
    DanglingReference,
    InvalidAcceptance,
    UnknownSymbol,
    InvalidLasso,
    AlphabetMismatch,
    CapacityExceeded,
    UnsupportedConversion,
    NotWeak,
    NotTrivial,
    NotMuller,
    UnknownFixture,
    SamplingExhausted,
    ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library. `kind()` is the stable,
/// machine-checkable part; `what()` carries the human diagnostic.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace omega
