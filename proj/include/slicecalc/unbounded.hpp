#pragma once

// Functions of an operator through the Moebius chart p = (s - k)^{-1}:
// with A = (T - kI)^{-1} and phi(p) = f(p^{-1} + k), f(T) = phi(A).
// The direct route integrates over the boundary of a domain W containing
// infinity:
//
//   f(T) = f(inf) I + (1/2pi) int_{dW_I} S^{-1}(s, T) ds_I f(s).

#include <optional>

#include "slicecalc/calculus.hpp"

namespace slicecalc {

struct MoebiusChart {
  double k = 0.0;
};

/// nullopt stands for the point at infinity.
using ExtendedPoint = std::optional<Paravector>;

/// (s - k)^{-1}; throws DomainError at s = k.
Paravector moebius_map(const MoebiusChart& chart, const Paravector& s);
/// Phi(inf) = 0 and Phi(k) = inf.
ExtendedPoint moebius_map(const MoebiusChart& chart, const ExtendedPoint& s, int n);

/// Component-wise image under z -> (z - k)^{-1}; include_infinity adds the
/// image (0, 0) of the point at infinity.
SpectrumReport moebius_spectrum(const MoebiusChart& chart, const SpectrumReport& spec,
                                bool include_infinity = false);

/// (T - kI)^{-1}; throws SpectrumHit when k is in the S-spectrum.
CliffordMatrix companion_operator(const CliffordMatrix& t, double k);

// f = a_0 + sum_{j>=1} (x - c)^{-j} b_j, regular at infinity with value a_0.
class ExtendedFunction {
 public:
  /// f must be finite with at most a constant power part. A supplied f_inf
  /// has to agree with a_0 to 1e-10.
  explicit ExtendedFunction(SliceSeriesFunction f,
                            std::optional<Multivector> f_inf = std::nullopt);

  const SliceSeriesFunction& f() const { return f_; }
  const Multivector& f_inf() const { return f_inf_; }

 private:
  SliceSeriesFunction f_;
  Multivector f_inf_;
};

/// phi(p) = f(p^{-1} + k), exactly, as a finite Laurent series about
/// 1/(c - k) (or a polynomial about 0 when k = c).
SliceSeriesFunction chart_transfer(const ExtendedFunction& ef, double k);

CliffordMatrix f_of_T_via_chart(const ExtendedFunction& ef, const CliffordMatrix& t, double k,
                                const Contour& contour_for_a);
/// Contour for A from build_contour with the default margin.
CliffordMatrix f_of_T_via_chart(const ExtendedFunction& ef, const CliffordMatrix& t, double k,
                                const ImagUnit& plane, int nodes = kDefaultNodes);

/// Clockwise circle around the pole of f, so the enclosed domain W holds
/// the spectrum and infinity. Empty for constant f.
Contour build_contour_at_infinity(const SpectrumReport& spec, const ExtendedFunction& ef,
                                  const ImagUnit& plane, double margin,
                                  int nodes = kDefaultNodes);

/// Throws ContourError unless the spectrum lies in W (winding 0) and the
/// pole of f outside it (winding -1).
CalculusResult f_of_T_direct(const ExtendedFunction& ef, const CliffordMatrix& t,
                             const Contour& contour);
CalculusResult f_of_T_direct(const ExtendedFunction& ef, const CliffordMatrix& t,
                             const ImagUnit& plane, int nodes = kDefaultNodes);

/// |S^{-1}(s, T) - (p I - S^{-1}(p, A) p^2)| with p = (s - k)^{-1}.
double transform_residual(const Paravector& s, const CliffordMatrix& t, double k);

/// Hausdorff distance between the mapped spectrum of T and that of A.
double spectrum_correspondence_check(const CliffordMatrix& t, double k);

}  // namespace slicecalc
