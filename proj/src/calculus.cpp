#include "slicecalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace slicecalc {

namespace {

void check_plane(const Contour& c, const CliffordMatrix& t) {
  if (c.plane.n() != t.n()) throw DimensionMismatch("contour plane and operator algebras differ");
  if (c.nodes_per_cycle < 1) throw ContourError("need at least one node per circle");
}

// Distances from f's center to the nearest and farthest spectral plane point.
std::pair<double, double> spectral_reach(const SpectrumReport& spec, double c) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& k : spec.components) {
    const double d = std::hypot(k.u - c, k.r);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return {lo, hi};
}

}  // namespace

double default_margin(double rep_norm) { return 0.1 * (1.0 + rep_norm); }

int winding_number(const Contour& c, std::complex<double> z) {
  int w = 0;
  for (const auto& circle : c.cycles) {
    if (std::abs(z - circle.center) < circle.radius) w += circle.orientation;
  }
  return w;
}

double contour_clearance(const Contour& c, const SpectrumReport& spec) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& circle : c.cycles) {
    for (const auto& k : spec.components) {
      best = std::min(best, std::abs(std::hypot(k.u - circle.center, k.r) - circle.radius));
    }
  }
  return best;
}

Contour build_contour(const SpectrumReport& spec, const SliceSeriesFunction& f,
                      const ImagUnit& plane, double margin, int nodes) {
  if (!(margin > 0.0)) throw ContourError("margin must be positive");
  if (nodes < 1) throw ContourError("need at least one node per circle");
  if (spec.components.empty()) throw ContourError("empty spectrum");
  const double c = f.center();
  const auto [near, far] = spectral_reach(spec, c);
  const double outer = f.outer_radius();
  const double inner = f.inner_radius();

  if (!(far < outer)) {
    throw ContourError("spectrum reaches " + std::to_string(far) +
                       " from the center, beyond the radius of convergence " +
                       std::to_string(outer));
  }
  double rho = far + margin;
  if (!(rho < outer)) rho = 0.5 * (far + outer);
  // A series with only negative powers has no outer singularity; keep the
  // spectrum well inside so the trapezoidal rule converges quickly.
  if (f.has_laurent() && std::isinf(outer) && f.finite() && f.power_terms() <= 1) {
    rho = std::max(rho, 2.0 * far);
  }

  Contour out;
  out.plane = plane;
  out.nodes_per_cycle = nodes;
  out.cycles.push_back({c, rho, 1});

  if (f.has_laurent()) {
    if (!(near > inner)) {
      throw ContourError("spectrum meets the inner singular disc of radius " +
                         std::to_string(inner));
    }
    const double half = 0.5 * (inner + near);
    const double hugged = near - margin;
    const double rho_in = hugged > inner ? std::min(hugged, half) : half;
    out.cycles.push_back({c, rho_in, -1});
  }
  return out;
}

double validate_contour(const Contour& c, const SpectrumReport& spec, const SliceSeriesFunction& f,
                        int spectral_winding, int center_winding) {
  for (const auto& k : spec.components) {
    const int w = winding_number(c, {k.u, k.r});
    if (w != spectral_winding) {
      throw ContourError("contour winds " + std::to_string(w) + " times around the spectral point (" +
                         std::to_string(k.u) + ", " + std::to_string(k.r) + ")");
    }
  }
  if (f.has_laurent() && winding_number(c, {f.center(), 0.0}) != center_winding) {
    throw ContourError("contour winds around the pole of f");
  }
  for (const auto& circle : c.cycles) {
    const double offset = std::abs(circle.center - f.center());
    const double lo = std::abs(circle.radius - offset);
    const double hi = circle.radius + offset;
    if (!(hi < f.outer_radius()) || !(lo > f.inner_radius())) {
      throw ContourError("f does not converge on the circle centered at " +
                         std::to_string(circle.center) + " of radius " +
                         std::to_string(circle.radius));
    }
  }
  const double clearance = contour_clearance(c, spec);
  const double floor = kClearanceFloor * spec.norms.rep_norm;
  if (!(clearance > 0.0) || clearance < floor) {
    throw ContourError("contour clearance " + std::to_string(clearance) + " is below the floor " +
                       std::to_string(floor));
  }
  return clearance;
}

CliffordMatrix contour_integral(const SliceSeriesFunction& f, const CliffordMatrix& t,
                                const Contour& c) {
  check_plane(c, t);
  if (f.n() != t.n()) throw DimensionMismatch("function and operator algebras differ");
  const int nodes = c.nodes_per_cycle;
  CliffordMatrix sum(t.n(), t.d());
  for (const auto& circle : c.cycles) {
    for (int k = 0; k < nodes; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / nodes;
      const std::complex<double> e = std::polar(1.0, theta);
      const std::complex<double> z = circle.center + circle.radius * e;
      // (1/2pi) dtheta = 1/nodes.
      const std::complex<double> w = static_cast<double>(circle.orientation) * circle.radius * e /
                                     static_cast<double>(nodes);
      const Paravector s = plane_embed(z.real(), z.imag(), c.plane);
      const Multivector ds = plane_embed(w.real(), w.imag(), c.plane).to_multivector();
      const Multivector fs = eval_in_plane(f, z, c.plane);
      sum += s_resolvent(s, t) * (ds * fs);
    }
  }
  return sum;
}

CalculusResult f_of_T(const SliceSeriesFunction& f, const CliffordMatrix& t, const Contour& c) {
  check_plane(c, t);
  const SpectrumReport spec = s_spectrum_exact(t);
  CalculusResult out;
  out.clearance = validate_contour(c, spec, f);
  out.value = contour_integral(f, t, c);
  out.nodes = c.nodes_per_cycle;
  out.plane = c.plane;
  return out;
}

CalculusResult f_of_T(const SliceSeriesFunction& f, const CliffordMatrix& t, const ImagUnit& plane,
                      int nodes) {
  const SpectrumReport spec = s_spectrum_exact(t);
  const Contour c = build_contour(spec, f, plane, default_margin(spec.norms.rep_norm), nodes);
  return f_of_T(f, t, c);
}

double moment_check(const CliffordMatrix& t, int m, const Multivector& a, const Contour& c) {
  if (m < 0) throw DomainError("moment order must be nonnegative");
  const CalculusResult r = f_of_T(series::monomial(m, a), t, c);
  return rep_norm(r.value - power(t, m) * a);
}

double moment_check(const CliffordMatrix& t, int m, const Multivector& a, int nodes) {
  const SpectrumReport spec = s_spectrum_exact(t);
  const auto f = series::monomial(m, a);
  const Contour c = build_contour(spec, f, ImagUnit::unit(t.n(), 1),
                                  default_margin(spec.norms.rep_norm), nodes);
  return moment_check(t, m, a, c);
}

double plane_independence_gap(const SliceSeriesFunction& f, const CliffordMatrix& t,
                              const ImagUnit& i1, const ImagUnit& i2, int nodes) {
  const SpectrumReport spec = s_spectrum_exact(t);
  const double margin = default_margin(spec.norms.rep_norm);
  const auto a = f_of_T(f, t, build_contour(spec, f, i1, margin, nodes));
  const auto b = f_of_T(f, t, build_contour(spec, f, i2, margin, nodes));
  return rep_norm(a.value - b.value);
}

double product_residual(const SliceSeriesFunction& f, const SliceSeriesFunction& g,
                        const CliffordMatrix& t, const ImagUnit& plane, int nodes) {
  if (!f.intrinsic() || !g.intrinsic()) {
    throw DomainError("the product rule needs series with real coefficients");
  }
  const SliceSeriesFunction fg = cauchy_product(f, g);
  const SpectrumReport spec = s_spectrum_exact(t);
  const Contour c = build_contour(spec, fg, plane, default_margin(spec.norms.rep_norm), nodes);
  const auto lhs = f_of_T(fg, t, c);
  const auto rf = f_of_T(f, t, c);
  const auto rg = f_of_T(g, t, c);
  return rep_norm(lhs.value - rf.value * rg.value);
}

}  // namespace slicecalc
