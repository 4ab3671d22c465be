#pragma once

#include <stdexcept>
#include <string>

namespace se {

// Base of every error raised by the engine. The CLI maps all of these to
// exit code 2 and prefixes the statement line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in incompatible ambient rings (different variable tables,
// different varieties).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Input outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A model the engine cannot present (non-linear zero loci, sections outside
// the positive isotropic part, ...).
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

// A constructor self-test failed (inconsistent Gysin or normal-bundle data).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// Two sections share a summand.
class IndependenceError : public Error {
 public:
  using Error::Error;
};

// A lemma's hypotheses are not met.
class NotApplicable : public Error {
 public:
  using Error::Error;
};

}  // namespace se
