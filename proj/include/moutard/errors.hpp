#pragma once

#include <stdexcept>
#include <string>

namespace moutard {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Sampling at (or numerically at) a zero of a denominator.
class PoleError : public Error {
public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
public:
  using Error::Error;
};

class NotHolomorphic : public Error {
public:
  using Error::Error;
};

class NotHarmonic : public Error {
public:
  using Error::Error;
};

/// The two legs of the transform system disagree: the input is not an
/// eigenfunction of the operator the seed belongs to.
class CompatibilityError : public Error {
public:
  using Error::Error;
};

class ResidualNonzero : public Error {
public:
  using Error::Error;
};

class TemporalResidualNonzero : public Error {
public:
  using Error::Error;
};

class AsymptoticMismatch : public Error {
public:
  using Error::Error;
};

/// A time-dependent seed does not satisfy dp/dt = d^3p/dz^3.
class NotEvolved : public Error {
public:
  using Error::Error;
};

class SingularBeforeBlowup : public Error {
public:
  using Error::Error;
};

class LambdaZeroError : public Error {
public:
  using Error::Error;
};

/// A monomial exponent exceeded the hard bound.
class ExponentOverflow : public Error {
public:
  using Error::Error;
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace moutard
