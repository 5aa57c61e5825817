#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpflat {

enum class ErrorKind {
  MissingEdge,
  InvalidGraph,
  SizeCapExceeded,
  DimensionMismatch,
  SizeMismatch,
  InvalidDimension,
  ConfigError,
  GraphMismatch,
  NotWellPositioned,
  NotANonEdge,
  UnsupportedDimension,
  UnsupportedNorm,
  InvalidLinkage,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map them without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingEdge: return "MissingEdge";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::InvalidDimension: return "InvalidDimension";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::GraphMismatch: return "GraphMismatch";
    case ErrorKind::NotWellPositioned: return "NotWellPositioned";
    case ErrorKind::NotANonEdge: return "NotANonEdge";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::UnsupportedNorm: return "UnsupportedNorm";
    case ErrorKind::InvalidLinkage: return "InvalidLinkage";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lpflat
