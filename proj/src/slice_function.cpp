#include "slicecalc/slice_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace slicecalc {

namespace {

void check_coeffs(int n, const std::vector<Multivector>& coeffs) {
  for (const auto& a : coeffs) {
    if (a.n() != n) {
      throw DimensionMismatch("series coefficient from R_" + std::to_string(a.n()) +
                              " in a series over R_" + std::to_string(n));
    }
  }
}

bool all_scalar(const std::vector<Multivector>& coeffs) {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Multivector& a) { return a.is_scalar(); });
}

void check_annulus(const SliceSeriesFunction& f, double dist) {
  const bool inside_inner = f.has_laurent() ? dist > f.inner_radius() : dist >= f.inner_radius();
  if (!(inside_inner && dist < f.outer_radius())) {
    throw DomainError("|x - c| = " + std::to_string(dist) +
                      " outside the annulus of convergence (" +
                      std::to_string(f.inner_radius()) + ", " +
                      std::to_string(f.outer_radius()) + ")");
  }
}

// Accumulates terms, stopping on the tail rule for infinite series.
class TailTracker {
 public:
  explicit TailTracker(bool finite) : finite_(finite) {}

  // Returns true when summation may stop.
  bool update(double term_norm, double sum_norm) {
    if (finite_) return false;
    if (term_norm <= kSeriesRelTol * sum_norm) {
      ++quiet_;
    } else {
      quiet_ = 0;
    }
    return quiet_ >= kSeriesQuietTerms;
  }

 private:
  bool finite_;
  std::size_t quiet_ = 0;
};

[[noreturn]] void throw_cap() {
  throw ConvergenceError("series did not converge within " +
                         std::to_string(kSeriesMaxTerms) + " terms");
}

double inv_factorial(std::size_t m) {
  return std::exp(-std::lgamma(static_cast<double>(m) + 1.0));
}

}  // namespace

SliceSeriesFunction::SliceSeriesFunction(int n, double center, std::vector<Multivector> power,
                                         std::vector<Multivector> laurent, double outer_radius,
                                         double inner_radius)
    : n_(n),
      center_(center),
      power_(std::move(power)),
      laurent_(std::move(laurent)),
      outer_radius_(outer_radius),
      inner_radius_(inner_radius) {
  check_coeffs(n_, power_);
  check_coeffs(n_, laurent_);
  if (!(outer_radius_ > 0.0) || inner_radius_ < 0.0 || inner_radius_ >= outer_radius_) {
    throw DomainError("series annulus needs 0 <= inner < outer, outer > 0");
  }
  refresh_intrinsic();
}

SliceSeriesFunction SliceSeriesFunction::from_rule(int n, double center, CoefficientRule rule,
                                                   double outer_radius, bool intrinsic) {
  if (!(outer_radius > 0.0)) throw DomainError("series radius must be positive");
  SliceSeriesFunction f;
  f.n_ = n;
  f.center_ = center;
  f.rule_ = std::move(rule);
  f.outer_radius_ = outer_radius;
  f.inner_radius_ = 0.0;
  f.intrinsic_ = intrinsic;
  return f;
}

void SliceSeriesFunction::refresh_intrinsic() {
  intrinsic_ = all_scalar(power_) && all_scalar(laurent_);
}

std::size_t SliceSeriesFunction::power_terms() const {
  return rule_ ? kSeriesMaxTerms : power_.size();
}

Multivector SliceSeriesFunction::power_coeff(std::size_t m) const {
  if (rule_) return rule_(m);
  if (m < power_.size()) return power_[m];
  return Multivector(n_);
}

SliceSeriesFunction SliceSeriesFunction::times_right(const Multivector& a) const {
  if (a.n() != n_) throw DimensionMismatch("right coefficient dimension differs from series");
  SliceSeriesFunction out = *this;
  for (auto& c : out.power_) c = c * a;
  for (auto& c : out.laurent_) c = c * a;
  if (rule_) {
    out.rule_ = [rule = rule_, a](std::size_t m) { return rule(m) * a; };
    out.intrinsic_ = intrinsic_ && a.is_scalar();
  } else {
    out.refresh_intrinsic();
  }
  return out;
}

SliceSeriesFunction operator+(const SliceSeriesFunction& f, const SliceSeriesFunction& g) {
  if (f.n_ != g.n_) throw DimensionMismatch("series over different algebras");
  if (f.center_ != g.center_) throw DomainError("series with different centers");
  SliceSeriesFunction out;
  out.n_ = f.n_;
  out.center_ = f.center_;
  out.outer_radius_ = std::min(f.outer_radius_, g.outer_radius_);
  out.inner_radius_ = std::max(f.inner_radius_, g.inner_radius_);
  if (out.inner_radius_ >= out.outer_radius_) throw DomainError("sum has an empty annulus");

  if (f.finite() && g.finite()) {
    out.power_.assign(std::max(f.power_.size(), g.power_.size()), Multivector(f.n_));
    for (std::size_t m = 0; m < out.power_.size(); ++m) {
      out.power_[m] = f.power_coeff(m) + g.power_coeff(m);
    }
  } else {
    out.rule_ = [f, g](std::size_t m) { return f.power_coeff(m) + g.power_coeff(m); };
  }
  out.laurent_.assign(std::max(f.laurent_.size(), g.laurent_.size()), Multivector(f.n_));
  for (std::size_t m = 0; m < out.laurent_.size(); ++m) {
    if (m < f.laurent_.size()) out.laurent_[m] += f.laurent_[m];
    if (m < g.laurent_.size()) out.laurent_[m] += g.laurent_[m];
  }
  out.intrinsic_ = f.intrinsic_ && g.intrinsic_;
  return out;
}

namespace series {

SliceSeriesFunction constant(const Multivector& a) {
  return SliceSeriesFunction(a.n(), 0.0, {a});
}

SliceSeriesFunction monomial(int m, const Multivector& a) {
  if (m < 0) throw DomainError("monomial degree must be nonnegative");
  std::vector<Multivector> power(static_cast<std::size_t>(m) + 1, Multivector(a.n()));
  power.back() = a;
  return SliceSeriesFunction(a.n(), 0.0, std::move(power));
}

SliceSeriesFunction exp(int n) {
  return SliceSeriesFunction::from_rule(
      n, 0.0, [n](std::size_t m) { return Multivector::scalar(n, inv_factorial(m)); },
      kInfiniteRadius, true);
}

SliceSeriesFunction sin(int n) {
  return SliceSeriesFunction::from_rule(
      n, 0.0,
      [n](std::size_t m) {
        if (m % 2 == 0) return Multivector(n);
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        return Multivector::scalar(n, sign * inv_factorial(m));
      },
      kInfiniteRadius, true);
}

SliceSeriesFunction cos(int n) {
  return SliceSeriesFunction::from_rule(
      n, 0.0,
      [n](std::size_t m) {
        if (m % 2 == 1) return Multivector(n);
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        return Multivector::scalar(n, sign * inv_factorial(m));
      },
      kInfiniteRadius, true);
}

SliceSeriesFunction geometric(int n) {
  return SliceSeriesFunction::from_rule(
      n, 0.0, [n](std::size_t) { return Multivector::scalar(n, 1.0); }, 1.0, true);
}

SliceSeriesFunction pole(double c, int order, const Multivector& a) {
  if (order < 1) throw DomainError("pole order must be at least 1");
  std::vector<Multivector> laurent(static_cast<std::size_t>(order), Multivector(a.n()));
  laurent.back() = a;
  return SliceSeriesFunction(a.n(), c, {}, std::move(laurent));
}

}  // namespace series

SliceSeriesFunction cauchy_product(const SliceSeriesFunction& f, const SliceSeriesFunction& g) {
  if (f.n() != g.n()) throw DimensionMismatch("series over different algebras");
  if (f.center() != g.center()) throw DomainError("Cauchy product needs a common center");
  if (f.has_laurent() || g.has_laurent()) {
    throw DomainError("Cauchy product is defined here for power series only");
  }
  const double radius = std::min(f.outer_radius(), g.outer_radius());
  const bool intrinsic = f.intrinsic() && g.intrinsic();
  if (f.finite() && g.finite()) {
    const std::size_t nf = f.power_terms();
    const std::size_t ng = g.power_terms();
    if (nf == 0 || ng == 0) return SliceSeriesFunction(f.n(), f.center(), {}, {}, radius);
    std::vector<Multivector> power(nf + ng - 1, Multivector(f.n()));
    for (std::size_t i = 0; i < nf; ++i) {
      for (std::size_t j = 0; j < ng; ++j) {
        power[i + j] += f.power_coeff(i) * g.power_coeff(j);
      }
    }
    return SliceSeriesFunction(f.n(), f.center(), std::move(power), {}, radius);
  }
  auto rule = [f, g](std::size_t m) {
    Multivector sum(f.n());
    for (std::size_t i = 0; i <= m; ++i) sum += f.power_coeff(i) * g.power_coeff(m - i);
    return sum;
  };
  return SliceSeriesFunction::from_rule(f.n(), f.center(), rule, radius, intrinsic);
}

SliceSeriesFunction s_derivative(const SliceSeriesFunction& f) {
  std::vector<Multivector> laurent;
  if (f.has_laurent()) {
    // d/dx (x - c)^{-m} b = -m (x - c)^{-m-1} b
    const auto& b = f.laurent_coeffs();
    laurent.assign(b.size() + 1, Multivector(f.n()));
    for (std::size_t m = 1; m <= b.size(); ++m) {
      laurent[m] = -static_cast<double>(m) * b[m - 1];
    }
  }
  if (!f.finite()) {
    if (f.has_laurent()) {
      throw DomainError("derivative of a rule series with a Laurent part is not supported");
    }
    auto rule = [f](std::size_t m) { return static_cast<double>(m + 1) * f.power_coeff(m + 1); };
    return SliceSeriesFunction::from_rule(f.n(), f.center(), rule, f.outer_radius(),
                                          f.intrinsic());
  }
  std::vector<Multivector> power;
  for (std::size_t m = 1; m < f.power_terms(); ++m) {
    power.push_back(static_cast<double>(m) * f.power_coeff(m));
  }
  return SliceSeriesFunction(f.n(), f.center(), std::move(power), std::move(laurent),
                             f.outer_radius(), f.inner_radius());
}

Multivector eval_series(const SliceSeriesFunction& f, const Paravector& x) {
  if (x.n() != f.n()) throw DimensionMismatch("evaluation point and series dimensions differ");
  const Paravector shifted = x - Paravector::real(x.n(), f.center());
  check_annulus(f, shifted.norm());

  const Multivector step = shifted.to_multivector();
  Multivector sum(f.n());
  Multivector power = Multivector::scalar(f.n(), 1.0);
  TailTracker tail(f.finite());
  bool done = false;
  for (std::size_t m = 0; m < f.power_terms(); ++m) {
    const Multivector term = power * f.power_coeff(m);
    sum += term;
    if (tail.update(term.norm(), sum.norm())) {
      done = true;
      break;
    }
    power = power * step;
  }
  if (!f.finite() && !done) throw_cap();

  if (f.has_laurent()) {
    const Multivector inv = para_inv(shifted).to_multivector();
    Multivector neg = inv;
    for (const auto& b : f.laurent_coeffs()) {
      sum += neg * b;
      neg = neg * inv;
    }
  }
  return sum;
}

Multivector eval_in_plane(const SliceSeriesFunction& f, std::complex<double> z,
                          const ImagUnit& plane) {
  if (plane.n() != f.n()) throw DimensionMismatch("plane and series dimensions differ");
  const std::complex<double> step = z - f.center();
  check_annulus(f, std::abs(step));

  // sum (Re w_m + I Im w_m) a_m = P + I Q
  Multivector re_part(f.n());
  Multivector im_part(f.n());
  std::complex<double> w = 1.0;
  TailTracker tail(f.finite());
  bool done = false;
  for (std::size_t m = 0; m < f.power_terms(); ++m) {
    const Multivector a = f.power_coeff(m);
    re_part += w.real() * a;
    im_part += w.imag() * a;
    const double sum_norm = std::hypot(re_part.norm(), im_part.norm());
    if (tail.update(std::abs(w) * a.norm(), sum_norm)) {
      done = true;
      break;
    }
    w *= step;
  }
  if (!f.finite() && !done) throw_cap();

  if (f.has_laurent()) {
    const std::complex<double> inv = 1.0 / step;
    std::complex<double> neg = inv;
    for (const auto& b : f.laurent_coeffs()) {
      re_part += neg.real() * b;
      im_part += neg.imag() * b;
      neg *= inv;
    }
  }
  return re_part + plane.to_multivector() * im_part;
}

Multivector cauchy_eval(const SliceSeriesFunction& f, const Paravector& x, double radius,
                        int nodes) {
  if (x.n() != f.n()) throw DimensionMismatch("evaluation point and series dimensions differ");
  if (f.has_laurent()) throw DomainError("Cauchy formula on a disc needs a power series");
  if (nodes < 1) throw DomainError("node count must be positive");
  const ImagUnit plane = plane_of(x);
  const std::complex<double> zx(x.re(), x.vec_norm());
  const std::complex<double> center(f.center(), 0.0);
  if (!(std::abs(zx - center) < radius)) {
    throw DomainError("evaluation point is not inside the integration circle");
  }
  if (!(radius < f.outer_radius())) {
    throw DomainError("integration circle leaves the disc of convergence");
  }

  const Multivector unit = plane.to_multivector();
  Multivector sum(f.n());
  for (int k = 0; k < nodes; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / nodes;
    const std::complex<double> rot = std::polar(radius, theta);
    const std::complex<double> zeta = center + rot;
    // (zeta - x)^{-1} (R e^{I theta}) dtheta / 2pi, all inside L_I
    const std::complex<double> w = rot / (zeta - zx) / static_cast<double>(nodes);
    const Multivector fz = eval_in_plane(f, zeta, plane);
    sum += w.real() * fz + w.imag() * (unit * fz);
  }
  return sum;
}

Multivector kernel_S(const Paravector& s, const Paravector& x) {
  if (s.n() != x.n()) throw DimensionMismatch("kernel arguments from different algebras");
  const Multivector xm = x.to_multivector();
  const Multivector quadratic = xm * xm - (2.0 * s.re()) * xm +
                                Multivector::scalar(x.n(), s.norm2());
  Multivector inv;
  try {
    inv = mv_inverse(quadratic);
  } catch (const SingularElement&) {
    throw SingularElement("x^2 - 2xRe[s] + |s|^2 is singular: x lies on the sphere of s");
  }
  return -(inv * (x - para_conj(s)).to_multivector());
}

Multivector kernel_series(const Paravector& s, const Paravector& x, int terms) {
  if (s.n() != x.n()) throw DimensionMismatch("kernel arguments from different algebras");
  const Multivector sinv = para_inv(s).to_multivector();
  const Multivector xm = x.to_multivector();
  Multivector sum(s.n());
  Multivector xpow = Multivector::scalar(s.n(), 1.0);
  Multivector spow = sinv;
  for (int m = 0; m < terms; ++m) {
    sum += xpow * spow;
    xpow = xpow * xm;
    spow = spow * sinv;
  }
  return sum;
}

namespace {

std::pair<Paravector, Paravector> probe_points(const Paravector& s, const ImagUnit& d1,
                                               const ImagUnit& d2, double t) {
  if (d1.n() != s.n() || d2.n() != s.n()) throw DimensionMismatch("probe directions");
  if (!(t > 0.0)) throw DomainError("probe distance must be positive");
  if (d1 == d2) throw DomainError("probe directions must differ");
  const Paravector base = para_conj(s);
  return {base + plane_embed(0.0, t, d1), base + plane_embed(0.0, t, d2)};
}

}  // namespace

double kernel_directional_gap(const Paravector& s, const ImagUnit& d1, const ImagUnit& d2,
                              double t) {
  const auto [x1, x2] = probe_points(s, d1, d2, t);
  return (kernel_S(s, x1) - kernel_S(s, x2)).norm();
}

double kernel_reciprocal_gap(const Paravector& s, const ImagUnit& d1, const ImagUnit& d2,
                             double t) {
  const auto [x1, x2] = probe_points(s, d1, d2, t);
  return (mv_inverse(kernel_S(s, x1)) - mv_inverse(kernel_S(s, x2))).norm();
}

}  // namespace slicecalc

namespace slicecalc {

double kernel_obstruction_gap(const Paravector& s, const ImagUnit& d1, const ImagUnit& d2,
                              double t) {
  const auto [x1, x2] = probe_points(s, d1, d2, t);
  const Multivector sbar = para_conj(s).to_multivector();
  auto term = [&](const Paravector& x) {
    const Multivector eps = (x - para_conj(s)).to_multivector();
    return mv_inverse(eps) * sbar * eps;
  };
  return (term(x1) - term(x2)).norm();
}

}  // namespace slicecalc
