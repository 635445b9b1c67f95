#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "slicecalc/calculus.hpp"

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
  r.norms = {1.0, 1.0};
  return r;
}

Multivector one(int n) { return Multivector::scalar(n, 1.0); }

// exp of a diagonalizable real matrix through its eigendecomposition.
Eigen::MatrixXd expm_eigen(const Eigen::MatrixXd& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::VectorXcd e = es.eigenvalues().array().exp();
  return (v * e.asDiagonal() * v.inverse()).real();
}

}  // namespace

TEST_CASE("contour construction") {
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const SpectrumReport pauli = s_spectrum_exact(gen::pauli());
  const Contour c = build_contour(pauli, series::exp(2), e1, 0.3);
  REQUIRE(c.cycles.size() == 1);
  CHECK(c.cycles[0].center == 0.0);
  CHECK(c.cycles[0].radius >= 2.3 - 1e-9);
  CHECK(c.cycles[0].orientation == 1);
  CHECK(winding_number(c, {0.0, 2.0}) == 1);
  CHECK(winding_number(c, {0.0, 0.0}) == 1);
  CHECK(winding_number(c, {5.0, 0.0}) == 0);

  const SliceSeriesFunction disc = SliceSeriesFunction::from_rule(
      1, 0.0, [](std::size_t m) { return Multivector::scalar(1, std::pow(3.0, -double(m))); }, 3.0, true);
  const Contour d = build_contour(points({{1.0, 0.0, 1}}), disc, ImagUnit::unit(1, 1), 0.5);
  CHECK(d.cycles[0].radius >= 1.5);
  CHECK(d.cycles[0].radius < 3.0);
  const Contour squeezed = build_contour(points({{1.0, 0.0, 1}}), disc, ImagUnit::unit(1, 1), 5.0);
  CHECK(squeezed.cycles[0].radius < 3.0);
  CHECK(squeezed.cycles[0].radius > 1.0);
  CHECK_THROWS_AS(build_contour(points({{3.5, 0.0, 1}}), disc, ImagUnit::unit(1, 1), 0.1), ContourError);

  // annulus 0.5 < |x| < 4 around the sphere (0, 1)
  const SliceSeriesFunction laurent(2, 0.0, {one(2)}, {one(2)}, 4.0, 0.5);
  const SpectrumReport sphere = points({{0.0, 1.0, 1}});
  const Contour a = build_contour(sphere, laurent, e1, 0.2);
  REQUIRE(a.cycles.size() == 2);
  CHECK(a.cycles[0].orientation == 1);
  CHECK(a.cycles[1].orientation == -1);
  CHECK(a.cycles[0].radius < 4.0);
  CHECK(a.cycles[1].radius > 0.5);
  CHECK(a.cycles[1].radius < 1.0);
  CHECK(winding_number(a, {0.0, 1.0}) == 1);
  CHECK(winding_number(a, {0.0, -1.0}) == 1);
  CHECK(winding_number(a, {0.0, 0.0}) == 0);
  CHECK(validate_contour(a, sphere, laurent) > 0.0);
  CHECK_THROWS_AS(build_contour(points({{0.0, 0.4, 1}}), laurent, e1, 0.2), ContourError);
  CHECK_THROWS_AS(build_contour(sphere, laurent, e1, 0.0), ContourError);
}

TEST_CASE("contour validation") {
  const SpectrumReport pauli = s_spectrum_exact(gen::pauli());
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  Contour through{e1, {{0.0, 2.0, 1}}, 64};
  CHECK_THROWS_AS(validate_contour(through, pauli, series::exp(2)), ContourError);
  Contour tight{e1, {{0.0, 2.0 + 1e-9, 1}}, 64};
  CHECK_THROWS_AS(validate_contour(tight, pauli, series::exp(2)), ContourError);
  Contour small{e1, {{0.0, 1.0, 1}}, 64};
  CHECK_THROWS_AS(validate_contour(small, pauli, series::exp(2)), ContourError);
  Contour wide{e1, {{0.0, 3.0, 1}}, 64};
  CHECK(validate_contour(wide, pauli, series::exp(2)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(validate_contour(wide, pauli, series::geometric(2)), ContourError);
  CHECK_THROWS_AS(f_of_T(series::exp(2), gen::pauli(), through), ContourError);
}

TEST_CASE("calculus examples") {
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const CliffordMatrix t = gen::pauli();
  const CalculusResult id = f_of_T(series::constant(one(2)), t, e1);
  CHECK(rep_norm(id.value - CliffordMatrix::identity(2, 2)) <= 1e-10);
  CHECK(id.clearance > 0.0);
  CHECK(id.nodes == kDefaultNodes);

  const CliffordMatrix sq = f_of_T(series::monomial(2, one(2)), t, e1).value;
  CHECK(rep_norm(sq - t * t) <= 1e-8);
  CHECK((sq.entry(0, 1) - parse_multivector("2 e12", 2)).norm() <= 1e-8);
  CHECK((sq.entry(0, 0) + 2.0 * one(2)).norm() <= 1e-8);

  const Eigen::MatrixXd t0 = diag({0.0, std::log(2.0)});
  const CliffordMatrix e = f_of_T(series::exp(2), gen::real_operator(2, t0), e1).value;
  CHECK(rep_norm(e - gen::real_operator(2, diag({1.0, 2.0}))) <= 1e-8);

  // f(x) = 1 + x^{-1} on the annulus around the sphere of e1
  const CliffordMatrix u = CliffordMatrix::scalar(Multivector::unit(2, 1), 1);
  const SliceSeriesFunction laurent(2, 0.0, {one(2)}, {one(2)}, 4.0, 0.5);
  const CliffordMatrix l = f_of_T(laurent, u, e1).value;
  CHECK(rep_norm(l - (CliffordMatrix::identity(2, 1) + invert(u))) <= 1e-10);
}

TEST_CASE("exp of a non-normal matrix") {
  gen::Gen g(51);
  for (int it = 0; it < 10; ++it) {
    const Eigen::MatrixXd a = g.matrix(3);
    const CliffordMatrix t = gen::real_operator(2, a);
    const CliffordMatrix e = f_of_T(series::exp(2), t, g.unit(2)).value;
    CHECK(rep_norm(e - gen::real_operator(2, expm_eigen(a))) <= 1e-8 * expm_eigen(a).norm());
  }
}

TEST_CASE("moments") {
  const CliffordMatrix t = gen::pauli();
  CHECK(moment_check(t, 0, one(2)) <= 1e-10);
  CHECK(moment_check(t, 1, one(2)) <= 1e-8);
  gen::Gen g(52);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix r = g.paravector_operator(2, 2);
    const double rho = rep_norm(r);
    CHECK(moment_check(r, 3, parse_multivector("e12", 2)) <= 1e-8 * std::pow(1 + rho, 3));
    const int m = g.integer(0, 4);
    CHECK(moment_check(r, m, g.multivector(2)) <= 1e-8 * std::pow(1 + rho, m));
  }
  CHECK_THROWS_AS(moment_check(t, -1, one(2)), DomainError);
}

TEST_CASE("one imaginary unit") {
  // T = T1 e1 in R_1: x^m gives (T1 e1)^m
  gen::Gen g(53);
  for (int m = 0; m <= 4; ++m) {
    const Eigen::MatrixXd t1 = g.matrix(3);
    const CliffordMatrix t = ParavectorOperator(1, {Eigen::MatrixXd::Zero(3, 3), t1}).to_clifford();
    const CliffordMatrix f = f_of_T(series::monomial(m, one(1)), t, ImagUnit::unit(1, 1)).value;
    CHECK(rep_norm(f - power(t, m)) <= 1e-8 * std::pow(1 + rep_norm(t), m));
  }
}

TEST_CASE("plane independence") {
  const CliffordMatrix t = gen::pauli();
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  CHECK(plane_independence_gap(series::exp(2), t, e1, ImagUnit::unit(2, 2)) <= 1e-8);
  CHECK(plane_independence_gap(series::exp(2), t, e1, e1) == 0.0);
  gen::Gen g(54);
  for (int it = 0; it < 10; ++it) {
    const CliffordMatrix r = g.paravector_operator(3, 2);
    CHECK(plane_independence_gap(series::monomial(3, one(3)), r, ImagUnit::unit(3, 1), g.unit(3)) <=
          1e-8 * std::pow(1 + rep_norm(r), 3));
  }
}

TEST_CASE("contour deformation") {
  gen::Gen g(55);
  for (int it = 0; it < 10; ++it) {
    const CliffordMatrix t = g.paravector_operator(2, 2);
    const SpectrumReport spec = s_spectrum_exact(t);
    const double m = default_margin(spec.norms.rep_norm);
    const ImagUnit i = g.unit(2);
    const CliffordMatrix a = f_of_T(series::exp(2), t, build_contour(spec, series::exp(2), i, m)).value;
    const CliffordMatrix b = f_of_T(series::exp(2), t, build_contour(spec, series::exp(2), i, 3 * m)).value;
    CHECK(rep_norm(a - b) <= 1e-8 * rep_norm(a));
  }
}

TEST_CASE("right module homomorphism") {
  gen::Gen g(56);
  for (int it = 0; it < 10; ++it) {
    const CliffordMatrix t = g.paravector_operator(2, 2);
    const ImagUnit i = g.unit(2);
    const Multivector a = g.multivector(2);
    const Multivector b = g.multivector(2);
    const SliceSeriesFunction f = series::exp(2);
    const SliceSeriesFunction h = series::monomial(2, one(2));
    const SpectrumReport spec = s_spectrum_exact(t);
    const Contour c = build_contour(spec, f, i, default_margin(spec.norms.rep_norm));
    const CliffordMatrix lhs = f_of_T(f.times_right(a) + h.times_right(b), t, c).value;
    const CliffordMatrix rhs = f_of_T(f, t, c).value * a + f_of_T(h, t, c).value * b;
    CHECK(rep_norm(lhs - rhs) <= 1e-10 * (1 + rep_norm(lhs)));
  }
}

TEST_CASE("product rule") {
  const CliffordMatrix t = gen::pauli();
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const SliceSeriesFunction x = series::monomial(1, one(2));
  CHECK(product_residual(x, x, t, e1) <= 1e-8);
  const SliceSeriesFunction p(2, 0.0, {one(2), one(2)});
  const SliceSeriesFunction q(2, 0.0, {one(2), -1.0 * one(2)});
  CHECK(product_residual(p, q, t, e1) <= 1e-8);
  const CliffordMatrix pq = f_of_T(cauchy_product(p, q), t, e1).value;
  CHECK(rep_norm(pq - (CliffordMatrix::identity(2, 2) - t * t)) <= 1e-8);
  const CliffordMatrix d = gen::real_operator(2, diag({0.1, -0.4}));
  CHECK(product_residual(series::exp(2), series::exp(2), d, e1) <= 1e-8);
  CHECK_THROWS_AS(product_residual(x.times_right(Multivector::unit(2, 1)), x, t, e1), DomainError);
}

TEST_CASE("quadrature converges geometrically") {
  // circle centered at -5 rho keeps clearance 0.2 rho from the spectrum
  gen::Gen g(57);
  for (int it = 0; it < 5; ++it) {
    const CliffordMatrix t = g.paravector_operator(2, 2);
    const SpectrumReport spec = s_spectrum_exact(t);
    const double rho = spec.norms.rep_norm;
    double far = 0.0;
    for (const auto& k : spec.components) far = std::max(far, std::hypot(k.u + 5.0 * rho, k.r));
    const Contour c256{ImagUnit::unit(2, 1), {{-5.0 * rho, far + 0.2 * rho, 1}}, 256};
    Contour c512 = c256;
    c512.nodes_per_cycle = 512;
    CHECK(validate_contour(c256, spec, series::monomial(3, one(2))) >= 0.2 * rho * (1 - 1e-12));
    const double r256 = moment_check(t, 3, one(2), c256);
    const double r512 = moment_check(t, 3, one(2), c512);
    CHECK(r512 * 10 <= r256);
  }
}
