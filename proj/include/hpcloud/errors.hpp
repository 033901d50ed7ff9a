#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpcloud {

/// Base for all library errors. `numerical()` separates solver failures from
/// bad input so the CLI can map them onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual bool numerical() const noexcept { return false; }
};

class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Z^2 alpha^2 >= kappa^2: the point-nucleus Dirac-Coulomb levels are not real.
class SupercriticalError : public DomainError {
public:
    using DomainError::DomainError;
};

class NumericalError : public Error {
public:
    using Error::Error;
    bool numerical() const noexcept override { return true; }
};

/// Moment matrix factorization failed or its condition estimate exceeded the cap.
class SingularMoment : public NumericalError {
public:
    SingularMoment(double x, double rcond, const std::string& why)
        : NumericalError("singular moment matrix at x=" + std::to_string(x) + " (" + why + ")"),
          x_(x), rcond_(rcond) {}
    double at() const noexcept { return x_; }
    double rcond() const noexcept { return rcond_; }

private:
    double x_;
    double rcond_;
};

/// The stability parameter denominator sum vanished for a row.
class DegenerateTau : public NumericalError {
public:
    explicit DegenerateTau(std::size_t row)
        : NumericalError("degenerate stability parameter in row " + std::to_string(row)), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// lambda hit w-(x) or w+(x) in the second-order coefficients.
class PoleError : public DomainError {
public:
    PoleError(double x, const std::string& which)
        : DomainError("pole of " + which + " at x=" + std::to_string(x)), x_(x) {}
    double at() const noexcept { return x_; }

private:
    double x_;
};

class SolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hpcloud
