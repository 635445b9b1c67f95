#pragma once

// Slice functional calculus for bounded operators:
//
//   f(T) = (1/2pi) int_{dU_I} S^{-1}(s, T) ds_I f(s)
//
// over unions of circles centered on the real axis of a slice plane L_I,
// with the trapezoidal rule on each circle.

#include <complex>
#include <vector>

#include "slicecalc/slice_function.hpp"
#include "slicecalc/spectral.hpp"

namespace slicecalc {

inline constexpr int kDefaultNodes = 512;
/// Nodes closer than this multiple of rep_norm to the spectrum are refused.
inline constexpr double kClearanceFloor = 1e-6;

double default_margin(double rep_norm);

struct Circle {
  double center = 0.0;
  double radius = 0.0;
  int orientation = 1;  // +1 counterclockwise in L_I
};

struct Contour {
  ImagUnit plane;
  std::vector<Circle> cycles;
  int nodes_per_cycle = kDefaultNodes;
};

struct CalculusResult {
  CliffordMatrix value;
  double clearance = 0.0;
  int nodes = 0;
  ImagUnit plane;
};

/// Sum of orientations of the circles enclosing z. Points on a circle count
/// as outside.
int winding_number(const Contour& c, std::complex<double> z);

/// Smallest distance between the circles and the plane points (u, +-r).
double contour_clearance(const Contour& c, const SpectrumReport& spec);

/// A circle (power series) or annulus (Laurent series) about f's center
/// enclosing every spectral sphere with the given margin, shrunk where
/// needed to stay inside f's annulus of convergence.
Contour build_contour(const SpectrumReport& spec, const SliceSeriesFunction& f,
                      const ImagUnit& plane, double margin, int nodes = kDefaultNodes);

/// Throws ContourError unless every spectral plane point has winding
/// `spectral_winding`, f's center (for Laurent f) has `center_winding`,
/// f converges on every circle and the clearance floor holds. Returns the
/// clearance.
double validate_contour(const Contour& c, const SpectrumReport& spec,
                        const SliceSeriesFunction& f, int spectral_winding = 1,
                        int center_winding = 0);

/// The bare quadrature sum, no validation.
CliffordMatrix contour_integral(const SliceSeriesFunction& f, const CliffordMatrix& t,
                                const Contour& c);

CalculusResult f_of_T(const SliceSeriesFunction& f, const CliffordMatrix& t, const Contour& c);

/// Contour from build_contour with default margin in the given plane.
CalculusResult f_of_T(const SliceSeriesFunction& f, const CliffordMatrix& t,
                      const ImagUnit& plane, int nodes = kDefaultNodes);

/// |f(T) - T^m a| for f(x) = x^m a.
double moment_check(const CliffordMatrix& t, int m, const Multivector& a, const Contour& c);
double moment_check(const CliffordMatrix& t, int m, const Multivector& a,
                    int nodes = kDefaultNodes);

double plane_independence_gap(const SliceSeriesFunction& f, const CliffordMatrix& t,
                              const ImagUnit& i1, const ImagUnit& i2,
                              int nodes = kDefaultNodes);

/// |(fg)(T) - f(T) g(T)|; f and g must have real coefficients.
double product_residual(const SliceSeriesFunction& f, const SliceSeriesFunction& g,
                        const CliffordMatrix& t, const ImagUnit& plane,
                        int nodes = kDefaultNodes);

}  // namespace slicecalc
