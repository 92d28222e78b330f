#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellkit {

enum class ErrorKind {
    configuration,
    domain,
    capacity,
    consistency,
    normalization,
    insufficient_truncation,
    unsupported_input,
    overflow,
    parse,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::configuration: return "configuration";
    case ErrorKind::domain: return "domain";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::normalization: return "normalization";
    case ErrorKind::insufficient_truncation: return "insufficient-truncation";
    case ErrorKind::unsupported_input: return "unsupported-input";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can report it as structured JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
    if (!condition) fail(kind, what);
}

} // namespace ellkit
