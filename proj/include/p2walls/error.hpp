#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace p2walls {

enum class ErrorKind {
  InvalidLattice,
  ParseError,
  NotInNumericHeart,
  DegenerateWall,
  EmptyWall,
  NotOnWall,
  RegionViolation,
  BadOptions,
  HeartInfeasible,
  BadPolarization,
  ZeroClass,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLattice: return "InvalidLattice";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotInNumericHeart: return "NotInNumericHeart";
    case ErrorKind::DegenerateWall: return "DegenerateWall";
    case ErrorKind::EmptyWall: return "EmptyWall";
    case ErrorKind::NotOnWall: return "NotOnWall";
    case ErrorKind::RegionViolation: return "RegionViolation";
    case ErrorKind::BadOptions: return "BadOptions";
    case ErrorKind::HeartInfeasible: return "HeartInfeasible";
    case ErrorKind::BadPolarization: return "BadPolarization";
    case ErrorKind::ZeroClass: return "ZeroClass";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace p2walls
