#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace mgt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A scalar argument is outside its admissible range (n_modes <= 0, mu <= 0, eta < 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Coefficient vectors whose lengths disagree with each other or with the eigen sequence.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The operation needs the sine eigenbasis but the sequence was user supplied.
class UnsupportedBasis : public Error {
 public:
  using Error::Error;
};

/// Operation requested outside the parameter regime where it is meaningful (e.g. eta <= 1 for smoothing).
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Formula evaluated outside its stated domain (e.g. space dimension below 3).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a physical constraint (complex-valued physical field).
class DataError : public Error {
 public:
  using Error::Error;
};

/// NaN or Inf produced during time stepping.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// Resolvent requested too close to a point of the spectrum.
class NearSingular : public Error {
 public:
  NearSingular(const std::string& what, std::complex<double> spectral_value);

  std::complex<double> spectral_value() const noexcept { return spectral_value_; }

 private:
  std::complex<double> spectral_value_;
};

}  // namespace mgt
