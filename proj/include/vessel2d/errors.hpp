#pragma once

#include <stdexcept>
#include <string>

namespace vessel2d {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent run configuration (CLI exit code 1).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Geometry outside the validity range of the change of variables.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Numeric failure (non-convergence, NaN, hyperbolicity loss). CLI exit code 2.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A closure denominator vanished.
class ClosureSingularityError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Pressure law evaluated at a collapsed vessel (A <= 0).
class CollapsedVesselError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Complex characteristic speeds. Carries the offending state.
class HyperbolicityError : public NumericError {
 public:
  HyperbolicityError(const std::string& what, double area, double u, double omega, double gamma)
      : NumericError(what), area_(area), u_(u), omega_(omega), gamma_(gamma) {}

  double area() const { return area_; }
  double u() const { return u_; }
  double omega() const { return omega_; }
  double gamma() const { return gamma_; }

 private:
  double area_;
  double u_;
  double omega_;
  double gamma_;
};

/// Failure located at a grid cell during time stepping.
class CellError : public NumericError {
 public:
  CellError(const std::string& what, int j, int k, double t)
      : NumericError(what + " at cell (j=" + std::to_string(j) + ", k=" + std::to_string(k) +
                     ", t=" + std::to_string(t) + ")"),
        j_(j), k_(k), t_(t) {}

  int j() const { return j_; }
  int k() const { return k_; }
  double t() const { return t_; }

 private:
  int j_;
  int k_;
  double t_;
};

}  // namespace vessel2d
