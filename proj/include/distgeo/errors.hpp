#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace distgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public ParseError {
 public:
  UnknownIdentifier(const std::string& name, std::size_t offset)
      : ParseError("unknown identifier '" + name + "'", offset), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// A subexpression is undefined at t (division by zero, sqrt of a negative, ...).
class DomainError : public Error {
 public:
  DomainError(double t, std::string subexpression, const std::string& reason);
  double t() const { return t_; }
  const std::string& subexpression() const { return sub_; }

 private:
  double t_;
  std::string sub_;
};

#define DISTGEO_SIMPLE_ERROR(Name)        \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

DISTGEO_SIMPLE_ERROR(InvalidArgument)
DISTGEO_SIMPLE_ERROR(InvalidManifold)
DISTGEO_SIMPLE_ERROR(SingularMetric)
DISTGEO_SIMPLE_ERROR(NotTangent)
DISTGEO_SIMPLE_ERROR(NotNormal)
DISTGEO_SIMPLE_ERROR(AsymmetricCubicForm)
DISTGEO_SIMPLE_ERROR(SamePlane)
DISTGEO_SIMPLE_ERROR(DimensionTooSmall)
DISTGEO_SIMPLE_ERROR(NotConstantCurvature)
DISTGEO_SIMPLE_ERROR(NotUnit)
DISTGEO_SIMPLE_ERROR(ConstraintViolated)
DISTGEO_SIMPLE_ERROR(ZeroWarp)
DISTGEO_SIMPLE_ERROR(ShapeMismatch)

#undef DISTGEO_SIMPLE_ERROR

}  // namespace distgeo
