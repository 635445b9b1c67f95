#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "slicecalc/unbounded.hpp"

using namespace slicecalc;

namespace {

Eigen::MatrixXd diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

SpectrumReport points(std::vector<SpectrumComponent> c) {
  SpectrumReport r;
  r.components = std::move(c);
  return r;
}

Multivector one(int n) { return Multivector::scalar(n, 1.0); }

ExtendedFunction ratpole(int n, double c, int order) {
  return ExtendedFunction(series::pole(c, order, one(n)));
}

// A real chart point at least `gap` away from every spectral sphere.
double free_real_point(const SpectrumReport& spec, double lo, double hi, double gap, gen::Gen& g) {
  for (;;) {
    const double k = g.real(lo, hi);
    if (spectral_distance(spec, k, 0.0) >= gap) return k;
  }
}

}  // namespace

TEST_CASE("Moebius chart") {
  const MoebiusChart chart{2.0};
  const Paravector p = moebius_map(chart, Paravector(0.0, {1.0, 0.0}));
  CHECK(p.re() == doctest::Approx(-0.4));
  CHECK(p.vec()[0] == doctest::Approx(-0.2));
  CHECK(p.vec_norm() == doctest::Approx(0.2));
  const ExtendedPoint inf = moebius_map(chart, std::nullopt, 2);
  REQUIRE(inf.has_value());
  CHECK(inf->norm() == 0.0);
  CHECK_FALSE(moebius_map(chart, ExtendedPoint(Paravector::real(2, 2.0)), 2).has_value());
  CHECK_THROWS_AS(moebius_map(chart, Paravector::real(2, 2.0)), DomainError);

  const SpectrumReport image = moebius_spectrum(chart, points({{0.0, 1.0, 1}}));
  CHECK(hausdorff_distance(image, points({{-0.4, 0.2, 1}})) <= 1e-15);
  const SpectrumReport with_inf = moebius_spectrum(chart, points({{0.0, 1.0, 1}}), true);
  CHECK(hausdorff_distance(with_inf, points({{-0.4, 0.2, 1}, {0.0, 0.0, 1}})) <= 1e-15);
  CHECK_THROWS_AS(moebius_spectrum(chart, points({{2.0, 0.0, 1}})), DomainError);
}

TEST_CASE("companion operator") {
  const CliffordMatrix e1 = CliffordMatrix::scalar(Multivector::unit(2, 1), 1);
  const CliffordMatrix a = companion_operator(e1, 2.0);
  CHECK((a.entry(0, 0) - parse_multivector("-0.4 - 0.2 e1", 2)).norm() <= 1e-15);
  const CliffordMatrix d = gen::real_operator(2, diag({1, 2}));
  CHECK(rep_norm(companion_operator(d, 0.0) - gen::real_operator(2, diag({1, 0.5}))) <= 1e-15);
  CHECK_THROWS_AS(companion_operator(d, 1.0), SpectrumHit);
  CHECK_THROWS_AS(companion_operator(gen::pauli(), 0.0), SpectrumHit);

  gen::Gen g(61);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const double k = free_real_point(spec, -3, 3, 0.05, g);
    const CliffordMatrix c = companion_operator(t, k);
    CHECK(rep_norm(c + s_resolvent(Paravector::real(t.n(), k), t)) <= 1e-10 * (1 + rep_norm(c)));
  }
}

TEST_CASE("functions regular at infinity") {
  const ExtendedFunction f = ratpole(2, 1.0, 1);
  CHECK(f.f_inf().norm() == 0.0);
  const SliceSeriesFunction shifted(2, 1.0, {one(2)}, {one(2)});
  CHECK(ExtendedFunction(shifted).f_inf() == one(2));
  CHECK_NOTHROW(ExtendedFunction(shifted, one(2)));
  CHECK_THROWS_AS(ExtendedFunction(shifted, 2.0 * one(2)), DomainError);
  CHECK_THROWS_AS(ExtendedFunction(series::monomial(1, one(2))), DomainError);
  CHECK_THROWS_AS(ExtendedFunction(series::exp(2)), DomainError);
}

TEST_CASE("chart transfer is composition with the inverse chart") {
  gen::Gen g(62);
  for (int it = 0; it < 30; ++it) {
    const int n = g.integer(1, 3);
    const double c = g.real(-2, 2);
    std::vector<Multivector> laurent;
    for (int j = 0; j < g.integer(1, 4); ++j) laurent.push_back(g.multivector(n));
    const ExtendedFunction ef(SliceSeriesFunction(n, c, {g.multivector(n)}, laurent));
    const double k = g.integer(0, 3) == 0 ? c : g.real(-3, 3);
    const SliceSeriesFunction phi = chart_transfer(ef, k);
    const Paravector s = g.paravector(n, g.real(0.5, 2.0)) + Paravector::real(n, c);
    if ((s - Paravector::real(n, k)).norm() < 0.2) continue;
    const Paravector p = moebius_map(MoebiusChart{k}, s);
    const Multivector lhs = eval_series(phi, p);
    const Multivector rhs = eval_series(ef.f(), s);
    CHECK((lhs - rhs).norm() <= 1e-10 * (1 + rhs.norm()));
    // phi(0) is the value at infinity
    CHECK((eval_series(phi, Paravector::real(n, 0.0)) - ef.f_inf()).norm() <= 1e-10 * (1 + ef.f_inf().norm()));
  }
}

TEST_CASE("chart route") {
  const CliffordMatrix t = gen::pauli();
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const CliffordMatrix r1 = f_of_T_via_chart(ratpole(2, 5.0, 1), t, 3.0, e1);
  CHECK(rep_norm(r1 + s_resolvent(Paravector::real(2, 5.0), t)) <= 1e-8);
  const CliffordMatrix r2 = f_of_T_via_chart(ratpole(2, 5.0, 2), t, 3.0, e1);
  const CliffordMatrix inv = invert(t - 5.0 * CliffordMatrix::identity(2, 2));
  CHECK(rep_norm(r2 - inv * inv) <= 1e-8);
  const ExtendedFunction constant(series::constant(one(2)));
  CHECK(rep_norm(f_of_T_via_chart(constant, t, 3.0, e1) - CliffordMatrix::identity(2, 2)) <= 1e-10);
  CHECK_THROWS_AS(f_of_T_via_chart(ratpole(2, 5.0, 1), t, 0.0, e1), SpectrumHit);
}

TEST_CASE("direct route") {
  const CliffordMatrix t = gen::pauli();
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const ExtendedFunction constant(series::constant(one(2)));
  const CalculusResult c = f_of_T_direct(constant, t, e1);
  CHECK(rep_norm(c.value - CliffordMatrix::identity(2, 2)) <= 1e-12);
  const ExtendedFunction f = ratpole(2, 5.0, 1);
  const CalculusResult d = f_of_T_direct(f, t, e1);
  CHECK(rep_norm(d.value - f_of_T_via_chart(f, t, 3.0, e1)) <= 1e-8);
  const Contour w = build_contour_at_infinity(s_spectrum_exact(t), f, e1, 0.3);
  REQUIRE(w.cycles.size() == 1);
  CHECK(w.cycles[0].orientation == -1);
  CHECK(w.cycles[0].center == 5.0);
  CHECK(winding_number(w, {5.0, 0.0}) == -1);
  CHECK(winding_number(w, {0.0, 2.0}) == 0);
  // a pole inside the spectral disc cannot be separated by a circle
  CHECK_THROWS_AS(f_of_T_direct(ratpole(2, 0.0, 1), t, e1), ContourError);
  // a counterclockwise circle around the pole is the wrong orientation
  Contour wrong = w;
  wrong.cycles[0].orientation = 1;
  CHECK_THROWS_AS(f_of_T_direct(f, t, wrong), ContourError);
}

TEST_CASE("chart and direct routes agree on random operators") {
  gen::Gen g(63);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const double rho = spec.norms.rep_norm;
    const double c = (g.integer(0, 1) ? 1.0 : -1.0) * g.real(1.3, 2.0) * rho;
    std::vector<Multivector> laurent{g.multivector(t.n()), g.multivector(t.n())};
    const ExtendedFunction ef(SliceSeriesFunction(t.n(), c, {g.multivector(t.n())}, laurent));
    const ImagUnit i = g.unit(t.n());
    const double k1 = free_real_point(spec, -2 * rho, 2 * rho, 0.1 * rho, g);
    const double k2 = free_real_point(spec, -2 * rho, 2 * rho, 0.1 * rho, g);
    if (std::abs(k1 - c) < 0.1 * rho || std::abs(k2 - c) < 0.1 * rho) continue;
    const CliffordMatrix direct = f_of_T_direct(ef, t, i).value;
    const CliffordMatrix a = f_of_T_via_chart(ef, t, k1, i);
    const CliffordMatrix b = f_of_T_via_chart(ef, t, k2, i);
    const double scale = 1 + rep_norm(direct);
    CHECK(rep_norm(direct - a) <= 1e-8 * scale);
    CHECK(rep_norm(a - b) <= 1e-8 * scale);
  }
}

TEST_CASE("resolvent transform identity") {
  gen::Gen g(64);
  int tested = 0;
  while (tested < 100) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const double rho = spec.norms.rep_norm;
    const double k = free_real_point(spec, -2 * rho, 2 * rho, 0.05 * (1 + rho), g);
    const Paravector s = g.paravector(t.n(), g.real(0.1, 2.0) * (1 + rho));
    if (spectral_distance(spec, s.re(), s.vec_norm()) < 0.05 * (1 + rho)) continue;
    if ((s - Paravector::real(t.n(), k)).norm() < 0.05) continue;
    CHECK(transform_residual(s, t, k) <= 1e-9);
    ++tested;
  }
  const CliffordMatrix d = gen::real_operator(2, diag({1, 2}));
  CHECK(transform_residual(Paravector::real(2, 4.0), d, 0.5) <= 1e-12);
  CHECK(transform_residual(plane_embed(1.0, 1.0, ImagUnit::unit(2, 1)), gen::pauli(), 3.0) <= 1e-9);
}

TEST_CASE("spectrum correspondence") {
  const CliffordMatrix e1 = CliffordMatrix::scalar(Multivector::unit(2, 1), 1);
  CHECK(spectrum_correspondence_check(e1, 2.0) <= 1e-10);
  CHECK(hausdorff_distance(s_spectrum_exact(companion_operator(e1, 2.0)), points({{-0.4, 0.2, 1}})) <= 1e-10);
  const CliffordMatrix d = gen::real_operator(2, diag({1, 2}));
  CHECK(hausdorff_distance(s_spectrum_exact(companion_operator(d, 0.0)),
                           points({{1.0, 0.0, 1}, {0.5, 0.0, 1}})) <= 1e-12);
  CHECK(spectrum_correspondence_check(gen::pauli(), 3.0) <= 1e-9);
  gen::Gen g(65);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const double k = free_real_point(s_spectrum_exact(t), -3, 3, 0.1, g);
    CHECK(spectrum_correspondence_check(t, k) <= 1e-9);
  }
}
