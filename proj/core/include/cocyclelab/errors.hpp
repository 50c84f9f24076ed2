#ifndef COCYCLELAB_ERRORS_HPP
#define COCYCLELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cocyclelab {

// Error categories map onto the CLI exit codes:
//   Input = 1, Capacity = 2, MathCheck = 3, Internal = 4.
enum class ErrorKind { Input, Capacity, MathCheck, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string what)
        : std::runtime_error(std::move(what)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& w) : Error(ErrorKind::Input, "parse error: " + w) {}
};

struct GroupAxiomError : Error {
    explicit GroupAxiomError(const std::string& w) : Error(ErrorKind::Input, "group axiom violated: " + w) {}
};

struct DivisibilityError : Error {
    explicit DivisibilityError(const std::string& w) : Error(ErrorKind::Input, "divisibility error: " + w) {}
};

struct ModuleMismatch : Error {
    explicit ModuleMismatch(const std::string& w) : Error(ErrorKind::Input, "module mismatch: " + w) {}
};

struct WrongCoefficientKind : Error {
    explicit WrongCoefficientKind(const std::string& w) : Error(ErrorKind::Input, "wrong coefficient kind: " + w) {}
};

struct NonIsometricModule : Error {
    explicit NonIsometricModule(const std::string& w) : Error(ErrorKind::Input, "non-isometric module: " + w) {}
};

struct SectionInvalid : Error {
    explicit SectionInvalid(const std::string& w) : Error(ErrorKind::Input, "invalid section: " + w) {}
};

struct KernelMismatch : Error {
    explicit KernelMismatch(const std::string& w) : Error(ErrorKind::Input, "kernel mismatch: " + w) {}
};

struct UnsupportedDegree : Error {
    explicit UnsupportedDegree(const std::string& w) : Error(ErrorKind::Input, "unsupported degree: " + w) {}
};

struct CapacityExceeded : Error {
    explicit CapacityExceeded(const std::string& w) : Error(ErrorKind::Capacity, "capacity exceeded: " + w) {}
};

struct NotACocycle : Error {
    explicit NotACocycle(const std::string& w) : Error(ErrorKind::MathCheck, "not a cocycle: " + w) {}
};

struct NotSmallEnough : Error {
    explicit NotSmallEnough(const std::string& w) : Error(ErrorKind::MathCheck, "not small enough: " + w) {}
};

struct RegularityBreach : Error {
    explicit RegularityBreach(const std::string& w) : Error(ErrorKind::Internal, "regularity breach: " + w) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& w) : Error(ErrorKind::Internal, "integer overflow: " + w) {}
};

struct InternalError : Error {
    explicit InternalError(const std::string& w) : Error(ErrorKind::Internal, "internal invariant breach: " + w) {}
};

} // namespace cocyclelab

#endif
