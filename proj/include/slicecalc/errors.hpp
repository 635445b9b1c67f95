#pragma once

#include <stdexcept>
#include <string>

namespace slicecalc {

// Base of every error raised by the library. The CLI maps subclasses onto
// exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A Clifford number (or a Clifford-coefficient matrix) has no inverse.
class SingularElement : public Error {
 public:
  using Error::Error;
};

// The quadratic pencil at (u, r) is not invertible, i.e. every s with
// Re[s] = u and |vec(s)| = r lies in the S-spectrum.
class SpectrumHit : public Error {
 public:
  SpectrumHit(double u, double r, const std::string& what)
      : Error(what), u_(u), r_(r) {}
  double u() const { return u_; }
  double r() const { return r_; }

 private:
  double u_;
  double r_;
};

// Point outside a series' annulus of convergence, or a violated
// convergence condition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Integration contour too close to the spectrum, or with wrong winding.
class ContourError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace slicecalc
