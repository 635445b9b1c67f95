#include "slicecalc/unbounded.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace slicecalc {

Paravector moebius_map(const MoebiusChart& chart, const Paravector& s) {
  const Paravector shifted = s - Paravector::real(s.n(), chart.k);
  if (shifted.norm2() == 0.0) throw DomainError("the chart pole k is not in the domain of the map");
  return para_inv(shifted);
}

ExtendedPoint moebius_map(const MoebiusChart& chart, const ExtendedPoint& s, int n) {
  if (!s) return Paravector::real(n, 0.0);
  const Paravector shifted = *s - Paravector::real(s->n(), chart.k);
  if (shifted.norm2() == 0.0) return std::nullopt;
  return para_inv(shifted);
}

SpectrumReport moebius_spectrum(const MoebiusChart& chart, const SpectrumReport& spec,
                                bool include_infinity) {
  SpectrumReport out = spec;
  out.components.clear();
  for (const auto& c : spec.components) {
    const std::complex<double> z(c.u - chart.k, c.r);
    if (z == 0.0) throw DomainError("the chart point k lies in the spectrum");
    const std::complex<double> w = 1.0 / z;
    out.components.push_back({w.real(), std::abs(w.imag()), c.multiplicity});
  }
  if (include_infinity) out.components.push_back({0.0, 0.0, 1});
  std::sort(out.components.begin(), out.components.end(),
            [](const SpectrumComponent& a, const SpectrumComponent& b) {
              return a.u != b.u ? a.u < b.u : a.r < b.r;
            });
  return out;
}

CliffordMatrix companion_operator(const CliffordMatrix& t, double k) {
  try {
    return invert(t - CliffordMatrix::scalar(Multivector::scalar(t.n(), k), t.d()));
  } catch (const SingularElement&) {
    throw SpectrumHit(k, 0.0, "chart point k = " + std::to_string(k) + " lies in the S-spectrum");
  }
}

ExtendedFunction::ExtendedFunction(SliceSeriesFunction f, std::optional<Multivector> f_inf)
    : f_(std::move(f)) {
  if (!f_.finite() || f_.power_terms() > 1) {
    throw DomainError("function is not regular at infinity: only a constant power part is allowed");
  }
  if (f_.inner_radius() != 0.0) throw DomainError("the Laurent part must be finite");
  f_inf_ = f_.power_coeff(0);
  if (f_inf) {
    if (f_inf->n() != f_.n()) throw DimensionMismatch("value at infinity from a different algebra");
    if ((*f_inf - f_inf_).norm() > 1e-10) {
      throw DomainError("supplied value at infinity disagrees with the series");
    }
  }
}

SliceSeriesFunction chart_transfer(const ExtendedFunction& ef, double k) {
  const SliceSeriesFunction& f = ef.f();
  const int n = f.n();
  const auto& b = f.laurent_coeffs();
  const double delta = k - f.center();
  if (delta == 0.0) {
    // (x - c)^{-j} = p^j.
    std::vector<Multivector> power{ef.f_inf()};
    for (const auto& bj : b) power.push_back(bj);
    return SliceSeriesFunction(n, 0.0, std::move(power));
  }
  // (x - c)^{-j} = delta^{-j} p^j / (p - q)^j with q = -1/delta, and
  // p^j = sum_l C(j, l) q^l (p - q)^{j - l}.
  const double q = -1.0 / delta;
  Multivector constant = ef.f_inf();
  std::vector<Multivector> laurent(b.size(), Multivector(n));
  for (std::size_t j = 1; j <= b.size(); ++j) {
    const double scale = std::pow(delta, -static_cast<double>(j));
    double binom = 1.0;
    double qpow = 1.0;
    for (std::size_t l = 0; l <= j; ++l) {
      const double w = scale * binom * qpow;
      if (l == 0) {
        constant += w * b[j - 1];
      } else {
        laurent[l - 1] += w * b[j - 1];
      }
      binom = binom * static_cast<double>(j - l) / static_cast<double>(l + 1);
      qpow *= q;
    }
  }
  return SliceSeriesFunction(n, q, {constant}, std::move(laurent));
}

CliffordMatrix f_of_T_via_chart(const ExtendedFunction& ef, const CliffordMatrix& t, double k,
                                const Contour& contour_for_a) {
  const CliffordMatrix a = companion_operator(t, k);
  return f_of_T(chart_transfer(ef, k), a, contour_for_a).value;
}

CliffordMatrix f_of_T_via_chart(const ExtendedFunction& ef, const CliffordMatrix& t, double k,
                                const ImagUnit& plane, int nodes) {
  const CliffordMatrix a = companion_operator(t, k);
  const SliceSeriesFunction phi = chart_transfer(ef, k);
  const SpectrumReport spec = s_spectrum_exact(a);
  const Contour c = build_contour(spec, phi, plane, default_margin(spec.norms.rep_norm), nodes);
  return f_of_T(phi, a, c).value;
}

Contour build_contour_at_infinity(const SpectrumReport& spec, const ExtendedFunction& ef,
                                  const ImagUnit& plane, double margin, int nodes) {
  if (!(margin > 0.0)) throw ContourError("margin must be positive");
  Contour out;
  out.plane = plane;
  out.nodes_per_cycle = nodes;
  if (!ef.f().has_laurent()) return out;
  const double c = ef.f().center();
  double near = std::numeric_limits<double>::infinity();
  for (const auto& k : spec.components) near = std::min(near, std::hypot(k.u - c, k.r));
  if (!(near > 0.0)) throw ContourError("the pole of f lies in the spectrum");
  const double hugged = near - margin;
  const double rho = hugged > 0.0 ? std::min(hugged, 0.5 * near) : 0.5 * near;
  out.cycles.push_back({c, rho, -1});
  return out;
}

CalculusResult f_of_T_direct(const ExtendedFunction& ef, const CliffordMatrix& t,
                             const Contour& contour) {
  if (contour.plane.n() != t.n()) throw DimensionMismatch("contour plane and operator algebras differ");
  const SpectrumReport spec = s_spectrum_exact(t);
  CalculusResult out;
  out.clearance = validate_contour(contour, spec, ef.f(), 0, -1);
  out.value = CliffordMatrix::scalar(ef.f_inf(), t.d()) + contour_integral(ef.f(), t, contour);
  out.nodes = contour.nodes_per_cycle;
  out.plane = contour.plane;
  return out;
}

CalculusResult f_of_T_direct(const ExtendedFunction& ef, const CliffordMatrix& t,
                             const ImagUnit& plane, int nodes) {
  const SpectrumReport spec = s_spectrum_exact(t);
  const Contour c =
      build_contour_at_infinity(spec, ef, plane, default_margin(spec.norms.rep_norm), nodes);
  return f_of_T_direct(ef, t, c);
}

double transform_residual(const Paravector& s, const CliffordMatrix& t, double k) {
  const Paravector p = moebius_map(MoebiusChart{k}, s);
  const CliffordMatrix a = companion_operator(t, k);
  const Multivector pm = p.to_multivector();
  CliffordMatrix rhs = CliffordMatrix::scalar(pm, t.d());
  rhs -= s_resolvent(p, a) * (pm * pm);
  return rep_norm(s_resolvent(s, t) - rhs);
}

double spectrum_correspondence_check(const CliffordMatrix& t, double k) {
  const SpectrumReport mapped = moebius_spectrum(MoebiusChart{k}, s_spectrum_exact(t));
  return hausdorff_distance(mapped, s_spectrum_exact(companion_operator(t, k)));
}

}  // namespace slicecalc
