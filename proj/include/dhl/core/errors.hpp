#ifndef DHL_CORE_ERRORS_HPP
#define DHL_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dhl {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class PrecisionError : public Error {
 public:
  explicit PrecisionError(const std::string& what) : Error(what) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(what) {}
};

class DivisibilityError : public Error {
 public:
  explicit DivisibilityError(const std::string& what) : Error(what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

class BracketError : public Error {
 public:
  explicit BracketError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace dhl

#endif
