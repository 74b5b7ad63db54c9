#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bettiscan {

enum class ErrorCode {
  Precondition,
  Overflow,
  NotAdmissible,
  LogicFault,
  NotStable,
  CannotCancel,
  Malformed,
  NotPure,
  InconsistentDiagram,
  NeedsCap,
  Parse,
  Io,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Precondition: return "PRECONDITION";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::NotAdmissible: return "NOT_ADMISSIBLE";
    case ErrorCode::LogicFault: return "LOGIC_FAULT";
    case ErrorCode::NotStable: return "NOT_STABLE";
    case ErrorCode::CannotCancel: return "CANNOT_CANCEL";
    case ErrorCode::Malformed: return "MALFORMED";
    case ErrorCode::NotPure: return "NOT_PURE";
    case ErrorCode::InconsistentDiagram: return "INCONSISTENT_DIAGRAM";
    case ErrorCode::NeedsCap: return "NEEDS_CAP";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bettiscan
