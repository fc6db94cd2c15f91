#pragma once

#include <stdexcept>
#include <string>

namespace covlie {

struct CovlieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZeroError : CovlieError {
  DivisionByZeroError() : CovlieError("division by zero in cyclotomic field") {}
};

struct NotCyclicError : CovlieError {
  explicit NotCyclicError(const std::string& what) : CovlieError(what) {}
};

struct NotInjectiveError : CovlieError {
  explicit NotInjectiveError(const std::string& what) : CovlieError(what) {}
};

struct GroupParseError : CovlieError {
  explicit GroupParseError(const std::string& what) : CovlieError(what) {}
};

struct NotAnIdealError : CovlieError {
  explicit NotAnIdealError(const std::string& witness)
      : CovlieError("subspace is not an ideal: " + witness) {}
};

struct NotAutomorphismError : CovlieError {
  explicit NotAutomorphismError(const std::string& what) : CovlieError(what) {}
};

struct NotSimultaneouslyDiagonalizableError : CovlieError {
  explicit NotSimultaneouslyDiagonalizableError(const std::string& what)
      : CovlieError(what) {}
};

struct UnrecognizedRootSystemError : CovlieError {
  std::string cartan_matrix;
  explicit UnrecognizedRootSystemError(std::string matrix)
      : CovlieError("unrecognized root system, Cartan matrix " + matrix),
        cartan_matrix(std::move(matrix)) {}
};

struct WindowExceededError : CovlieError {
  long degree;
  explicit WindowExceededError(long deg)
      : CovlieError("degree " + std::to_string(deg) + " leaves the window"),
        degree(deg) {}
};

struct FormNotPreservedError : CovlieError {
  explicit FormNotPreservedError(const std::string& what) : CovlieError(what) {}
};

struct NotFiniteError : CovlieError {
  explicit NotFiniteError(const std::string& what) : CovlieError(what) {}
};

struct NotIntegerSemisimpleError : CovlieError {
  explicit NotIntegerSemisimpleError(const std::string& what) : CovlieError(what) {}
};

}  // namespace covlie
