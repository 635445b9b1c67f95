#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "slicecalc/spectral.hpp"

using namespace slicecalc;

namespace {

SpectrumReport points(std::vector<SpectrumComponent> c) {
  SpectrumReport r;
  r.components = std::move(c);
  return r;
}

Eigen::MatrixXd diag(std::initializer_list<double> v) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

Paravector pv(double x0, std::vector<double> v) { return Paravector(x0, std::move(v)); }

Multivector mv(const char* s, int n) { return parse_multivector(s, n); }

bool same(const CliffordMatrix& a, const CliffordMatrix& b) {
  for (std::size_t m = 0; m < a.blade_count(); ++m) {
    if (a.blade(m) != b.blade(m)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("pencil") {
  const CliffordMatrix zero(2, 2);
  CHECK(rep_norm(pencil(zero, 1.0, 2.0) - 5.0 * CliffordMatrix::identity(2, 2)) == 0.0);
  const CliffordMatrix t = gen::pauli();
  // T^2 = [[-2, 2 e12], [-2 e12, -2]]
  const CliffordMatrix t2 = pencil(t, 0.0, 0.0);
  CHECK((t2.entry(0, 0) - mv("-2", 2)).norm() <= 1e-15);
  CHECK((t2.entry(0, 1) - mv("2 e12", 2)).norm() <= 1e-15);
  CHECK((t2.entry(1, 0) - mv("-2 e12", 2)).norm() <= 1e-15);
  CHECK((t2.entry(1, 1) - mv("-2", 2)).norm() <= 1e-15);
  // general (u, r): off-diagonal entries 2(e1 - u)e2 and -2(e1 + u)e2
  const double u = 0.7;
  const double r = 1.3;
  const CliffordMatrix p = pencil(t, u, r);
  const double s2 = u * u + r * r;
  CHECK((p.entry(0, 0) - (Multivector::scalar(2, s2 - 2) - 2 * u * Multivector::unit(2, 1))).norm() <= 1e-14);
  CHECK((p.entry(0, 1) - 2.0 * (mv("e1", 2) - Multivector::scalar(2, u)) * mv("e2", 2)).norm() <= 1e-14);
  CHECK((p.entry(1, 0) + 2.0 * (mv("e1", 2) + Multivector::scalar(2, u)) * mv("e2", 2)).norm() <= 1e-14);
  CHECK((p.entry(1, 1) - (Multivector::scalar(2, s2 - 2) + 2 * u * Multivector::unit(2, 1))).norm() <= 1e-14);
  CHECK_THROWS_AS(invert(pencil(t, 0.0, 2.0)), SingularElement);
  const CliffordMatrix e1 = CliffordMatrix::scalar(Multivector::unit(2, 1), 1);
  CHECK(rep_norm(pencil(e1, 0.0, 1.0)) <= 1e-15);
  CHECK_THROWS_AS(pencil(e1, 0.0, -1.0), DomainError);
}

TEST_CASE("axial symmetry of the pencil") {
  gen::Gen g(41);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(3, g.integer(1, 3));
    const double u = g.real(-2, 2);
    const double r = g.real(0, 2);
    const Paravector s1 = pv(u, {r, 0.0, 0.0});
    const Paravector s2 = pv(u, {0.0, 0.0, r});
    CHECK(same(pencil(t, s1.re(), s1.vec_norm()), pencil(t, s2.re(), s2.vec_norm())));
    if (spectral_distance(s_spectrum_exact(t), u, r) > 1e-3) {
      CHECK(rep_norm(s_resolvent(s1, t) - s_resolvent(s2, t)) > 0.0);
    }
  }
}

TEST_CASE("exact spectrum examples") {
  const SpectrumReport p = s_spectrum_exact(gen::pauli());
  REQUIRE(p.components.size() == 2);
  CHECK(std::abs(p.components[0].u) <= 1e-10);
  CHECK(std::abs(p.components[0].r) <= 1e-10);
  CHECK(std::abs(p.components[1].u) <= 1e-10);
  CHECK(std::abs(p.components[1].r - 2.0) <= 1e-10);
  CHECK(p.components[0].multiplicity == 4);
  CHECK(p.components[1].multiplicity == 4);

  const SpectrumReport e1 = s_spectrum_exact(CliffordMatrix::scalar(Multivector::unit(2, 1), 1));
  CHECK(hausdorff_distance(e1, points({{0.0, 1.0, 1}})) <= 1e-12);
  const SpectrumReport d = s_spectrum_exact(gen::real_operator(2, diag({1, 2})));
  CHECK(hausdorff_distance(d, points({{1.0, 0.0, 1}, {2.0, 0.0, 1}})) <= 1e-12);
  CHECK(d.components[0].u < d.components[1].u);
}

TEST_CASE("spectrum is nonempty and inside the representation norm ball") {
  gen::Gen g(42);
  for (int it = 0; it < 100; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 4));
    const SpectrumReport s = s_spectrum_exact(t);
    REQUIRE_FALSE(s.components.empty());
    for (const auto& c : s.components) {
      CHECK(std::hypot(c.u, c.r) <= s.norms.rep_norm * (1 + 1e-10));
      CHECK(c.r >= 0.0);
      CHECK_FALSE(pencil_null_vectors(t, c.u, c.r, 1e-6).empty());
    }
  }
}

TEST_CASE("blade norm does not bound the spectrum") {
  // The Pauli sphere has radius 2 while sqrt(sum |T_A|^2) = sqrt(2).
  const SpectrumReport p = s_spectrum_exact(gen::pauli());
  CHECK(p.norms.blade_norm < 2.0);
  CHECK(p.norms.rep_norm == doctest::Approx(2.0));
}

TEST_CASE("null vectors") {
  const CliffordMatrix t = gen::pauli();
  const auto v = pencil_null_vectors(t, 0.0, 2.0);
  CHECK(v.size() == 4);
  const CliffordMatrix p = pencil(t, 0.0, 2.0);
  for (const auto& x : v) {
    CHECK(x.norm() == doctest::Approx(1.0));
    CHECK(apply(p, x).norm() <= 1e-12);
  }
  CHECK(pencil_null_vectors(t, 0.0, 1.0).empty());
}

TEST_CASE("scan examples") {
  ScanOptions opt = default_scan_options(gen::pauli(), 0.05);
  const SpectrumReport scan = s_spectrum_scan(gen::pauli(), opt);
  CHECK(hausdorff_distance(scan, points({{0.0, 0.0, 1}, {0.0, 2.0, 1}})) <= 0.05);
  CHECK(scan.method == SpectrumMethod::scan);

  const CliffordMatrix zero(2, 2);
  const SpectrumReport z = s_spectrum_scan(zero, default_scan_options(zero));
  CHECK(hausdorff_distance(z, points({{0.0, 0.0, 1}})) <= default_scan_options(zero).step);

  ScanOptions narrow = default_scan_options(gen::pauli());
  narrow.r_max = 1.0;
  CHECK_THROWS_AS(s_spectrum_scan(gen::pauli(), narrow), DomainError);
}

TEST_CASE("scan agrees with the exact spectrum") {
  gen::Gen g(43);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const ScanOptions opt = default_scan_options(t);
    CHECK(hausdorff_distance(s_spectrum_exact(t), s_spectrum_scan(t, opt)) <= opt.step);
  }
}

TEST_CASE("S-resolvent examples") {
  const CliffordMatrix t = CliffordMatrix::scalar(parse_multivector("0.5 e2", 2), 1);
  const CliffordMatrix r = s_resolvent(pv(0.0, {1.0, 0.0}), t);
  CHECK((r.entry(0, 0) + (1.0 / 3.0) * mv("4 e1 + 2 e2", 2)).norm() <= 1e-15);

  const CliffordMatrix d = gen::real_operator(2, diag({1, 2}));
  CHECK(rep_norm(s_resolvent(Paravector::real(2, 3.0), d) - gen::real_operator(2, diag({0.5, 1.0}))) <= 1e-15);

  const Paravector s = pv(0.5, {1.0, -1.0});
  const CliffordMatrix z = s_resolvent(s, CliffordMatrix(2, 3));
  CHECK(rep_norm(z - CliffordMatrix::scalar(para_inv(s).to_multivector(), 3)) <= 1e-15);

  try {
    s_resolvent(pv(0.0, {0.0, 2.0}), gen::pauli());
    FAIL("expected a spectrum hit");
  } catch (const SpectrumHit& e) {
    CHECK(e.u() == 0.0);
    CHECK(e.r() == 2.0);
  }
}

TEST_CASE("S-resolvent equation") {
  gen::Gen g(44);
  int tested = 0;
  while (tested < 200) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const Paravector s = g.paravector(t.n(), g.real(0.1, 2.0) * (1 + spec.norms.rep_norm));
    if (spectral_distance(spec, s.re(), s.vec_norm()) < 0.05) continue;
    CHECK(resolvent_equation_residual(s, t) <= 1e-10);
    ++tested;
  }
  CHECK(resolvent_equation_residual(pv(1.0, {3.0, 0.0}), gen::pauli()) <= 1e-10);
  CHECK(resolvent_equation_residual(pv(1.0, {3.0, 0.0}), CliffordMatrix(2, 2)) <= 1e-15);
}

TEST_CASE("series resolvent") {
  gen::Gen g(45);
  for (int it = 0; it < 30; ++it) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const Paravector s = g.paravector(t.n(), 2.0 * rep_norm(t));
    const SeriesResolvent sr = s_resolvent_series(s, t, 80);
    CHECK(sr.status == SeriesStatus::guaranteed);
    CHECK(sr.ratio == doctest::Approx(0.5));
    CHECK(rep_norm(sr.value - s_resolvent(s, t)) <= 1e-10);
  }
  const Paravector s = pv(0.3, {-1.0});
  CHECK(rep_norm(s_resolvent_series(s, CliffordMatrix(1, 2), 0).value -
                 CliffordMatrix::scalar(para_inv(s).to_multivector(), 2)) <= 1e-15);

  // Pauli, s = 3: the error shrinks by about 2/3 per term.
  const Paravector three = Paravector::real(2, 3.0);
  const CliffordMatrix closed = s_resolvent(three, gen::pauli());
  const SeriesResolvent a = s_resolvent_series(three, gen::pauli(), 20);
  const SeriesResolvent b = s_resolvent_series(three, gen::pauli(), 40);
  CHECK(a.ratio == doctest::Approx(2.0 / 3.0));
  const double ea = rep_norm(a.value - closed);
  const double eb = rep_norm(b.value - closed);
  CHECK(eb / ea == doctest::Approx(std::pow(2.0 / 3.0, 20)).epsilon(0.2));

  CHECK(s_resolvent_series(Paravector::real(2, 1.8), gen::pauli(), 5).status == SeriesStatus::unverified);
  CHECK(s_resolvent_series(Paravector::real(2, 1.0), gen::pauli(), 5).status == SeriesStatus::divergent);
  CHECK(to_string(SeriesStatus::unverified) == "unverified");
}

TEST_CASE("left expansion") {
  gen::Gen g(46);
  int tested = 0;
  while (tested < 50) {
    const CliffordMatrix t = g.paravector_operator(g.integer(1, 3), g.integer(1, 3));
    const Paravector s = g.paravector(t.n(), g.real(0.5, 3.0) * (1 + rep_norm(t)));
    double ratio = 0.0;
    try {
      ratio = left_expansion_ratio(s, t);
    } catch (const SpectrumHit&) {
      continue;
    }
    if (ratio > 0.6) continue;
    const CliffordMatrix closed = s_resolvent(s, t);
    CHECK(rep_norm(left_resolvent_expansion(s, t, 200) - closed) <= 1e-10 * (1 + rep_norm(closed)));
    ++tested;
  }
  // real s: one term, (sI - T)^{-1}
  const CliffordMatrix d = gen::real_operator(2, diag({1, 2}));
  CHECK(rep_norm(left_resolvent_expansion(Paravector::real(2, 3.0), d, 0) -
                 invert(3.0 * CliffordMatrix::identity(2, 2) - d)) <= 1e-15);
  CHECK_THROWS_AS(left_resolvent_expansion(pv(0.5, {3.0, 0.0}), gen::pauli(), 10), DomainError);
  CHECK_THROWS_AS(left_resolvent_expansion(pv(0.0, {3.0, 0.0}), gen::pauli(), 10), SpectrumHit);
  CHECK_THROWS_AS(left_expansion_ratio(Paravector::real(2, 1.0), d), SpectrumHit);
}

TEST_CASE("left expansion admissibility on a sphere") {
  // The condition depends on s only through Re s and |vec s|, so every
  // point of the sphere through an admissible s is admissible.
  gen::Gen g(47);
  for (int it = 0; it < 20; ++it) {
    const CliffordMatrix t = g.paravector_operator(3, g.integer(1, 3));
    const double u = 2.0 + rep_norm(t);
    const double r = g.real(0.1, 1.0);
    const ImagUnit i1 = g.unit(3);
    const ImagUnit i2 = g.unit(3);
    const double q1 = left_expansion_ratio(plane_embed(u, r, i1), t);
    const double q2 = left_expansion_ratio(plane_embed(u, r, i2), t);
    CHECK(q1 == doctest::Approx(q2).epsilon(1e-14));
    if (q1 < 1.0) {
      CHECK(rep_norm(left_resolvent_expansion(plane_embed(u, r, i2), t, 200) -
                     s_resolvent(plane_embed(u, r, i2), t)) <= 1e-9);
    }
  }
}

TEST_CASE("left expansion admissibility does depend on the real part") {
  // T = 1: s = 5 + 0.5 e1 has ratio 0.5/4 but s' = 1.2 + 0.5 e1, with the
  // same |vec s|, has ratio 0.5/0.2.
  const CliffordMatrix t = CliffordMatrix::identity(2, 1);
  CHECK(left_expansion_ratio(pv(5.0, {0.5, 0.0}), t) == doctest::Approx(0.125));
  CHECK(left_expansion_ratio(pv(1.2, {0.5, 0.0}), t) == doctest::Approx(2.5));
  CHECK_THROWS_AS(left_resolvent_expansion(pv(1.2, {0.5, 0.0}), t, 10), DomainError);
}

TEST_CASE("joint spectrum of commuting matrices") {
  const auto two = commuting_gamma_spectrum({diag({1, 2}), diag({0, 1})});
  REQUIRE(two.size() == 2);
  CHECK(std::abs(two[0][0] - 1) + std::abs(two[0][1]) <= 1e-6);
  CHECK(std::abs(two[1][0] - 2) + std::abs(two[1][1] - 1) <= 1e-6);

  Eigen::MatrixXd m(2, 2);
  m << 2, 1, 0, 3;
  const auto one = commuting_gamma_spectrum({m});
  REQUIRE(one.size() == 2);
  CHECK(one[0][0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(one[1][0] == doctest::Approx(3.0).epsilon(1e-6));

  const auto zero = commuting_gamma_spectrum({Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)});
  REQUIRE(zero.size() == 1);
  CHECK(std::abs(zero[0][0]) + std::abs(zero[0][1]) <= 1e-6);

  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 1, 0;
  CHECK_THROWS_AS(commuting_gamma_spectrum({a, diag({1, 2})}), DomainError);
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK_THROWS_AS(commuting_gamma_spectrum({rot}), DomainError);
}
