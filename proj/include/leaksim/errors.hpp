#ifndef LEAKSIM_ERRORS_HPP
#define LEAKSIM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace leaksim {

enum class ParseErrorKind {
  MalformedDocument,
  UnknownComponentKind,
  DuplicateComponentName,
  UnknownActionOp,
  DanglingServiceTarget,
  InvalidFieldValue,
  NonMonotonicTimestamps,
  FirstEventNotLaunch,
};

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::MalformedDocument: return "MalformedDocument";
    case ParseErrorKind::UnknownComponentKind: return "UnknownComponentKind";
    case ParseErrorKind::DuplicateComponentName: return "DuplicateComponentName";
    case ParseErrorKind::UnknownActionOp: return "UnknownActionOp";
    case ParseErrorKind::DanglingServiceTarget: return "DanglingServiceTarget";
    case ParseErrorKind::InvalidFieldValue: return "InvalidFieldValue";
    case ParseErrorKind::NonMonotonicTimestamps: return "NonMonotonicTimestamps";
    case ParseErrorKind::FirstEventNotLaunch: return "FirstEventNotLaunch";
  }
  return "?";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

// Errors raised by event dispatch; these are caller mistakes, not handler
// faults, and escape as exceptions.
enum class DispatchErrorKind {
  UnknownActivity,
  UnknownButton,
  NoForegroundActivity,
  TargetNotService,
  NonMonotonicEventTime,
};

inline std::string_view to_string(DispatchErrorKind k) {
  switch (k) {
    case DispatchErrorKind::UnknownActivity: return "UnknownActivity";
    case DispatchErrorKind::UnknownButton: return "UnknownButton";
    case DispatchErrorKind::NoForegroundActivity: return "NoForegroundActivity";
    case DispatchErrorKind::TargetNotService: return "TargetNotService";
    case DispatchErrorKind::NonMonotonicEventTime: return "NonMonotonicEventTime";
  }
  return "?";
}

class DispatchError : public std::runtime_error {
 public:
  DispatchError(DispatchErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  DispatchErrorKind kind() const { return kind_; }

 private:
  DispatchErrorKind kind_;
};

// Faults raised while a handler body executes. They never escape the
// runtime: run_handler records them in the trace and runs the declared
// catch handler, mirroring a logged catch block.
enum class FaultKind {
  PermissionFault,
  UnboundVariable,
  MissingPermission,
  InvalidAccuracy,
};

inline std::string_view to_string(FaultKind k) {
  switch (k) {
    case FaultKind::PermissionFault: return "PermissionFault";
    case FaultKind::UnboundVariable: return "UnboundVariable";
    case FaultKind::MissingPermission: return "MissingPermission";
    case FaultKind::InvalidAccuracy: return "InvalidAccuracy";
  }
  return "?";
}

struct HandlerFault {
  FaultKind kind;
  std::string detail;  // permission name or variable name
};

}  // namespace leaksim

#endif  // LEAKSIM_ERRORS_HPP
