#ifndef UPLOGIC_ERRORS_HPP
#define UPLOGIC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uplogic {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent user input (bad ids, unknown propositions, ...).
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// A loaded document violates a structural invariant.
class ValidationError : public InputError {
public:
  explicit ValidationError(const std::string& what) : InputError(what) {}
};

/// A configured size cap or enumeration budget was exceeded.
class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

/// An internal consistency check failed. Never expected; indicates a bug.
class InternalError : public Error {
public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace uplogic

#endif
