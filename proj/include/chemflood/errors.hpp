#pragma once

#include <stdexcept>
#include <string>

namespace chemflood {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};
struct ValidationError : Error {
  explicit ValidationError(const std::string& w) : Error("validation", w) {}
};
struct StructureError : Error {
  explicit StructureError(const std::string& w) : Error("structure", w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error("numerical", w) {}
};
struct RhError : Error {
  explicit RhError(const std::string& w) : Error("rankine_hugoniot", w) {}
};
struct DegenerateError : Error {
  explicit DegenerateError(const std::string& w) : Error("degenerate", w) {}
};
struct ConnectionNotFound : Error {
  explicit ConnectionNotFound(const std::string& w) : Error("connection_not_found", w) {}
};
struct UnsupportedCase : Error {
  explicit UnsupportedCase(const std::string& w) : Error("unsupported_case", w) {}
};
struct CompatibilityError : Error {
  explicit CompatibilityError(const std::string& w) : Error("compatibility", w) {}
};
struct ZeroFlowError : Error {
  explicit ZeroFlowError(const std::string& w) : Error("zero_flow", w) {}
};

}  // namespace chemflood
