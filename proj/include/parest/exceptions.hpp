#ifndef PAREST_EXCEPTIONS_HPP_
#define PAREST_EXCEPTIONS_HPP_

#include <stdexcept>
#include <string>

namespace parest {

struct NonPositiveMass : std::runtime_error {
  explicit NonPositiveMass(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentInput : std::runtime_error {
  explicit InconsistentInput(const std::string& what) : std::runtime_error(what) {}
};

struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

struct RankDeficientContact : std::runtime_error {
  explicit RankDeficientContact(const std::string& what) : std::runtime_error(what) {}
};

struct SingularParameterHessian : std::runtime_error {
  explicit SingularParameterHessian(const std::string& what) : std::runtime_error(what) {}
};

struct NonFiniteData : std::runtime_error {
  explicit NonFiniteData(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentSchedule : std::runtime_error {
  explicit InconsistentSchedule(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace parest

#endif  // PAREST_EXCEPTIONS_HPP_
