#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permorb {

/// Machine-readable error categories. Every exception thrown by the library
/// is an `Error` carrying one of these.
enum class ErrorCode {
  structure,    ///< malformed tensor shape, label count mismatch
  invariant,    ///< data parses but violates a fusion / modular invariant
  domain,       ///< argument outside the operation's domain
  unsupported,  ///< request the library deliberately does not answer
  overflow,     ///< 64-bit multiplicity or rational overflow
  numerical,    ///< iteration failed to converge
  not_modular,  ///< operation needs a non-degenerate S-matrix
  parse,        ///< lexical / syntax error in text input
  schema,       ///< well-formed text with missing or mistyped fields
  io,           ///< file could not be read
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::structure: return "structure";
    case ErrorCode::invariant: return "invariant";
    case ErrorCode::domain: return "domain";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::numerical: return "numerical";
    case ErrorCode::not_modular: return "not_modular";
    case ErrorCode::parse: return "parse";
    case ErrorCode::schema: return "schema";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + " error: " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace permorb
