#pragma once

#include <stdexcept>
#include <string>

namespace seldark {

// Invalid user input: bad specs, malformed configs. The CLI maps these to exit code 2.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A well-posed computation that could not be completed. The CLI maps these to exit code 3.
class ComputationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class LabelingError : public ComputationError {
public:
  using ComputationError::ComputationError;
};

class StiffPropagationError : public ComputationError {
public:
  using ComputationError::ComputationError;
};

class CalibrationError : public ComputationError {
public:
  using ComputationError::ComputationError;
};

} // namespace seldark
