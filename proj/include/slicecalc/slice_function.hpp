#pragma once

// Slice-monogenic functions represented by power/Laurent series about a real
// center, with Clifford coefficients multiplied on the right:
//
//   f(x) = sum_{m>=0} (x - c)^m a_m + sum_{m>=1} (x - c)^{-m} b_m
//
// plus the scalar noncommutative Cauchy kernel.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "slicecalc/clifford.hpp"

namespace slicecalc {

inline constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

// Stop once this many consecutive terms fall below kSeriesRelTol of the sum.
inline constexpr double kSeriesRelTol = 1e-15;
inline constexpr std::size_t kSeriesQuietTerms = 8;
inline constexpr std::size_t kSeriesMaxTerms = 10000;

class SliceSeriesFunction {
 public:
  using CoefficientRule = std::function<Multivector(std::size_t)>;

  /// Finite power part and finite Laurent part (laurent[0] multiplies
  /// (x - c)^{-1}). Radii default to the largest annulus the finite sums
  /// allow.
  SliceSeriesFunction(int n, double center, std::vector<Multivector> power,
                      std::vector<Multivector> laurent = {},
                      double outer_radius = kInfiniteRadius,
                      double inner_radius = 0.0);

  /// Infinite power series whose m-th coefficient is rule(m).
  static SliceSeriesFunction from_rule(int n, double center, CoefficientRule rule,
                                       double outer_radius, bool intrinsic);

  int n() const { return n_; }
  double center() const { return center_; }
  double outer_radius() const { return outer_radius_; }
  double inner_radius() const { return inner_radius_; }
  bool intrinsic() const { return intrinsic_; }

  /// True when the power part is a finite list (no coefficient rule).
  bool finite() const { return !rule_; }
  /// Number of stored power coefficients; kSeriesMaxTerms for rule series.
  std::size_t power_terms() const;
  bool has_laurent() const { return !laurent_.empty(); }

  Multivector power_coeff(std::size_t m) const;
  const std::vector<Multivector>& laurent_coeffs() const { return laurent_; }

  /// m -> m a.
  SliceSeriesFunction times_right(const Multivector& a) const;

  friend SliceSeriesFunction operator+(const SliceSeriesFunction& f,
                                       const SliceSeriesFunction& g);

 private:
  SliceSeriesFunction() = default;
  void refresh_intrinsic();

  int n_ = 0;
  double center_ = 0.0;
  std::vector<Multivector> power_;
  CoefficientRule rule_;
  std::vector<Multivector> laurent_;
  double outer_radius_ = kInfiniteRadius;
  double inner_radius_ = 0.0;
  bool intrinsic_ = true;
};

namespace series {

SliceSeriesFunction constant(const Multivector& a);
/// x -> x^m a (center 0).
SliceSeriesFunction monomial(int m, const Multivector& a);
SliceSeriesFunction exp(int n);
SliceSeriesFunction sin(int n);
SliceSeriesFunction cos(int n);
/// sum_m x^m, radius 1.
SliceSeriesFunction geometric(int n);
/// x -> (x - c)^{-order} a.
SliceSeriesFunction pole(double c, int order, const Multivector& a);

}  // namespace series

/// Cauchy product of two power series with a common center. The product is
/// the pointwise product of the restrictions when the coefficients of f are
/// real.
SliceSeriesFunction cauchy_product(const SliceSeriesFunction& f,
                                   const SliceSeriesFunction& g);

SliceSeriesFunction s_derivative(const SliceSeriesFunction& f);

/// Direct evaluation with powers of (x - c) formed by Clifford products.
Multivector eval_series(const SliceSeriesFunction& f, const Paravector& x);

/// Evaluation at z = u + vI in the slice plane L_I, with the powers of
/// (z - c) carried out in complex arithmetic.
Multivector eval_in_plane(const SliceSeriesFunction& f, std::complex<double> z,
                          const ImagUnit& plane);

/// Cauchy integral over the circle |zeta - c| = radius in L_{I_x}, trapezoidal
/// rule on `nodes` equispaced angles.
Multivector cauchy_eval(const SliceSeriesFunction& f, const Paravector& x,
                        double radius, int nodes);

/// -(x^2 - 2 x Re[s] + |s|^2)^{-1} (x - conj(s)).
Multivector kernel_S(const Paravector& s, const Paravector& x);

/// Partial sum sum_{m < terms} x^m s^{-1-m}.
Multivector kernel_series(const Paravector& s, const Paravector& x, int terms);

/// |S^{-1}(s, conj(s) + t d1) - S^{-1}(s, conj(s) + t d2)|.
double kernel_directional_gap(const Paravector& s, const ImagUnit& d1,
                              const ImagUnit& d2, double t);

/// Same probe on the reciprocal kernels. Near x = conj(s) the reciprocal is
/// eps^{-1} conj(s) eps + conj(s) + eps - 2Re[s] with eps = x - conj(s); the
/// first term has no limit unless s is real.
double kernel_reciprocal_gap(const Paravector& s, const ImagUnit& d1,
                             const ImagUnit& d2, double t);

/// |eps1^{-1} conj(s) eps1 - eps2^{-1} conj(s) eps2| with eps_i = t d_i: the
/// term of the reciprocal that carries the direction. Zero for real s.
double kernel_obstruction_gap(const Paravector& s, const ImagUnit& d1,
                              const ImagUnit& d2, double t);

}  // namespace slicecalc
