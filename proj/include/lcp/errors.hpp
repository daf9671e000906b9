// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file lcp/errors.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace lcp
{
//! Argument outside the domain covered by tabulated data.
class RangeError : public std::out_of_range
{
  public:
    using std::out_of_range::out_of_range;
};

//! Quantity that is infinite for the requested model (e.g. the frequency
//! integral of a constant polarizability).
class DivergenceError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! TM polarization vectors are undefined at zero imaginary frequency.
class SingularKinematicsError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! PWS is only calibrated against the retarded (Casimir-Polder) regime.
class CalibrationDomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! Invalid user input or physically inconsistent configuration.
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Quadrature did not reach the requested tolerance.
class AccuracyError : public std::runtime_error
{
  public:
    AccuracyError(std::string const& what, double estimate, double error_bound)
        : std::runtime_error(what + " (estimate " + std::to_string(estimate)
                             + ", error bound " + std::to_string(error_bound)
                             + ")")
        , estimate_(estimate)
        , error_bound_(error_bound)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

  private:
    double estimate_;
    double error_bound_;
};
}  // namespace lcp
