#pragma once

#include <stdexcept>
#include <string>

namespace pluri {

struct InvalidCell : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotAVertex : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidDirection : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularEvaluation : std::domain_error {
  using std::domain_error::domain_error;
};

struct DegenerateCoefficient : std::domain_error {
  using std::domain_error::domain_error;
};

struct PreconditionViolated : std::logic_error {
  using std::logic_error::logic_error;
};

struct InvalidManifold : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInterior : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidFlower : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace pluri
