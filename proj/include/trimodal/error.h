#pragma once

#include <stdexcept>
#include <string>

namespace trimodal {

// Invalid argument or parameter outside the admissible region.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A series, quadrature or iteration did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Root finder called on an interval whose endpoints share a sign.
class BracketError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnsupportedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

// Root-based and grid-based modality counts disagree.
class InconsistentClassification : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace trimodal
