#include "slicecalc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "slicecalc/unbounded.hpp"

namespace slicecalc {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Paravector random_paravector(Rng& rng, int n, double radius) {
  std::vector<double> v(static_cast<std::size_t>(n));
  double x0 = uniform(rng, -1.0, 1.0);
  double norm2 = x0 * x0;
  for (auto& c : v) {
    c = uniform(rng, -1.0, 1.0);
    norm2 += c * c;
  }
  const double scale = radius / std::sqrt(std::max(norm2, 1e-300));
  for (auto& c : v) c *= scale;
  return Paravector(x0 * scale, std::move(v));
}

CliffordMatrix random_operator(Rng& rng, int n, int d) {
  std::vector<Eigen::MatrixXd> comps;
  for (int j = 0; j <= n; ++j) {
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng, -1.0, 1.0);
    comps.push_back(std::move(m));
  }
  return ParavectorOperator(n, std::move(comps)).to_clifford();
}

Multivector random_multivector(Rng& rng, int n) {
  Multivector a(n);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = uniform(rng, -1.0, 1.0);
  return a;
}

ImagUnit random_unit(Rng& rng, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& c : v) c = uniform(rng, -1.0, 1.0);
  return ImagUnit(std::move(v));
}

// A paravector at distance >= gap from every spectral sphere.
Paravector admissible_point(Rng& rng, const SpectrumReport& spec, int n, double radius, double gap) {
  for (;;) {
    const Paravector s = random_paravector(rng, n, uniform(rng, 0.2, 1.0) * radius);
    if (spectral_distance(spec, s.re(), s.vec_norm()) >= gap) return s;
  }
}

class Tally {
 public:
  Tally(std::string name, double bound, bool upper = true)
      : name_(std::move(name)), bound_(bound), upper_(upper),
        value_(upper ? 0.0 : std::numeric_limits<double>::infinity()) {}

  void add(double v) {
    ++samples_;
    if (std::isnan(v)) {
      nan_ = true;
      return;
    }
    value_ = upper_ ? std::max(value_, v) : std::min(value_, v);
  }

  Check check() const {
    Check c{name_, samples_, value_, bound_, upper_, true};
    c.pass = !nan_ && samples_ > 0 && (upper_ ? value_ <= bound_ : value_ >= bound_);
    return c;
  }

 private:
  std::string name_;
  double bound_;
  bool upper_;
  double value_;
  int samples_ = 0;
  bool nan_ = false;
};

SuiteResult kernel_suite(Rng& rng) {
  SuiteResult out{"kernel", {}};
  Tally series("series_vs_closed_form", 1e-10);
  for (int i = 0; i < 200; ++i) {
    const int n = pick(rng, 1, 3);
    const Paravector s = random_paravector(rng, n, uniform(rng, 0.5, 2.0));
    const Paravector x = random_paravector(rng, n, uniform(rng, 0.0, 0.5) * s.norm());
    const Multivector closed = kernel_S(s, x);
    series.add((kernel_series(s, x, 60) - closed).norm() / closed.norm());
  }
  out.checks.push_back(series.check());

  Tally worked("worked_value", 1e-14);
  const Multivector expected =
      -(4.0 * Multivector::unit(2, 1) + 2.0 * Multivector::unit(2, 2)) / 3.0;
  worked.add((kernel_S(Paravector(0.0, {1.0, 0.0}), Paravector(0.0, {0.0, 0.5})) - expected).norm());
  out.checks.push_back(worked.check());

  Tally gap("directional_gap_nonreal_s", 0.1, false);
  Tally obstruction("obstruction_gap_real_s_over_t", 1e-6);
  const ImagUnit e1 = ImagUnit::unit(2, 1);
  const ImagUnit e2 = ImagUnit::unit(2, 2);
  for (double t : {1e-2, 1e-3, 1e-4}) {
    gap.add(kernel_directional_gap(Paravector(0.0, {1.0, 0.0}), e1, e2, t));
    for (int i = 0; i < 5; ++i) {
      const Paravector s = Paravector::real(2, uniform(rng, -3.0, 3.0));
      obstruction.add(kernel_obstruction_gap(s, e1, e2, t) / t);
    }
  }
  out.checks.push_back(gap.check());
  out.checks.push_back(obstruction.check());
  return out;
}

SuiteResult resolvent_suite(Rng& rng) {
  SuiteResult out{"resolvent", {}};
  Tally equation("resolvent_equation", 1e-10);
  for (int i = 0; i < 200; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const double rho = spec.norms.rep_norm;
    const Paravector s = admissible_point(rng, spec, t.n(), 1.5 * rho + 1.0, 0.05 * (1.0 + rho));
    equation.add(resolvent_equation_residual(s, t));
  }
  out.checks.push_back(equation.check());

  Tally triple("series_closed_left_agreement", 1e-10);
  for (int i = 0; i < 50; ++i) {
    CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    t *= 1.0 / rep_norm(t);
    // |Re s| >= 2.5 and |vec s| <= (|Re s| - 1)/2 keep both expansions at
    // rate <= 1/2.
    const double u = (pick(rng, 0, 1) ? 1.0 : -1.0) * uniform(rng, 2.5, 4.0);
    const double vr = uniform(rng, 0.0, 0.5 * (std::abs(u) - 1.0));
    const Paravector dir = random_paravector(rng, t.n(), 1.0);
    std::vector<double> vec(dir.vec().begin(), dir.vec().end());
    const double vn = dir.vec_norm();
    for (auto& c : vec) c *= vn > 0.0 ? vr / vn : 0.0;
    const Paravector s(u, vec);
    const CliffordMatrix closed = s_resolvent(s, t);
    const CliffordMatrix series = s_resolvent_series(s, t, 200).value;
    const CliffordMatrix left = left_resolvent_expansion(s, t, 200);
    const double scale = std::max(1.0, rep_norm(closed));
    triple.add(std::max({rep_norm(series - closed), rep_norm(left - closed),
                         rep_norm(series - left)}) / scale);
  }
  out.checks.push_back(triple.check());
  return out;
}

SuiteResult spectrum_suite(Rng& rng) {
  SuiteResult out{"spectrum", {}};
  Tally pauli("pauli_example", 1e-10);
  {
    Eigen::MatrixXd s1(2, 2);
    Eigen::MatrixXd s3(2, 2);
    s1 << 0, 1, 1, 0;
    s3 << 1, 0, 0, -1;
    const CliffordMatrix t = ParavectorOperator(2, {Eigen::MatrixXd::Zero(2, 2), s3, s1}).to_clifford();
    SpectrumReport expected;
    expected.components = {{0.0, 0.0, 4}, {0.0, 2.0, 4}};
    pauli.add(hausdorff_distance(s_spectrum_exact(t), expected));
  }
  out.checks.push_back(pauli.check());

  Tally scan("exact_vs_scan_over_step", 1.0);
  for (int i = 0; i < 20; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const ScanOptions opt = default_scan_options(t);
    scan.add(hausdorff_distance(s_spectrum_exact(t), s_spectrum_scan(t, opt)) / opt.step);
  }
  out.checks.push_back(scan.check());

  Tally contain("containment_excess_rep_norm", 1e-10);
  Tally nonempty("min_component_count", 1.0, false);
  int blade_violations = 0;
  for (int i = 0; i < 100; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    double far = 0.0;
    for (const auto& c : spec.components) far = std::max(far, std::hypot(c.u, c.r));
    contain.add((far - spec.norms.rep_norm) / std::max(1.0, spec.norms.rep_norm));
    nonempty.add(static_cast<double>(spec.components.size()));
    if (far > spec.norms.blade_norm * (1.0 + 1e-12)) ++blade_violations;
  }
  out.checks.push_back(contain.check());
  out.checks.push_back(nonempty.check());
  // The bound with the blade-wise norm does not hold in general; recorded
  // for information.
  Check info{"operators_exceeding_blade_norm", 100, static_cast<double>(blade_violations),
             std::nullopt, true, true};
  out.checks.push_back(info);
  return out;
}

SuiteResult moments_suite(Rng& rng) {
  SuiteResult out{"moments", {}};
  Tally moments("moment_residual_over_scale", 1e-8);
  for (int i = 0; i < 50; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const Multivector a = random_multivector(rng, t.n());
    const double scale = 1.0 + rep_norm(t);
    for (int m = 0; m <= 4; ++m) moments.add(moment_check(t, m, a) / std::pow(scale, m));
  }
  out.checks.push_back(moments.check());

  Tally hom("right_module_homomorphism", 1e-10);
  Tally product("product_rule", 1e-8);
  for (int i = 0; i < 10; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const int n = t.n();
    const ImagUnit plane = ImagUnit::unit(n, 1);
    const Multivector a = random_multivector(rng, n);
    const Multivector b = random_multivector(rng, n);
    const SliceSeriesFunction f = series::exp(n);
    const SliceSeriesFunction g = series::monomial(2, Multivector::scalar(n, 1.0));
    const SliceSeriesFunction combo = f.times_right(a) + g.times_right(b);
    const SpectrumReport spec = s_spectrum_exact(t);
    const Contour c = build_contour(spec, combo, plane, default_margin(spec.norms.rep_norm));
    const CliffordMatrix lhs = f_of_T(combo, t, c).value;
    const CliffordMatrix rhs = f_of_T(f, t, c).value * a + f_of_T(g, t, c).value * b;
    hom.add(rep_norm(lhs - rhs) / std::max(1.0, rep_norm(lhs)));

    product.add(product_residual(f, f, t, plane));
    const Multivector one = Multivector::scalar(n, 1.0);
    const SliceSeriesFunction p(n, 0.0, {one, one});
    const SliceSeriesFunction q(n, 0.0, {one, -one});
    product.add(product_residual(p, q, t, plane));
  }
  out.checks.push_back(hom.check());
  out.checks.push_back(product.check());
  return out;
}

SuiteResult planes_suite(Rng& rng) {
  SuiteResult out{"planes", {}};
  Tally planes("plane_independence", 1e-8);
  Tally deform("contour_deformation", 1e-8);
  for (int i = 0; i < 10; ++i) {
    const int n = pick(rng, 2, 3);
    const CliffordMatrix t = random_operator(rng, n, pick(rng, 1, 3));
    const std::vector<ImagUnit> units{ImagUnit::unit(n, 1), ImagUnit::unit(n, 2), random_unit(rng, n)};
    const SliceSeriesFunction cube = series::monomial(3, Multivector::scalar(n, 1.0));
    for (const SliceSeriesFunction& f : {series::exp(n), cube}) {
      for (std::size_t a = 0; a < units.size(); ++a) {
        for (std::size_t b = a + 1; b < units.size(); ++b) {
          planes.add(plane_independence_gap(f, t, units[a], units[b]));
        }
      }
    }
    const SpectrumReport spec = s_spectrum_exact(t);
    const double margin = default_margin(spec.norms.rep_norm);
    const SliceSeriesFunction e = series::exp(n);
    const auto narrow = f_of_T(e, t, build_contour(spec, e, units[0], margin));
    const auto wide = f_of_T(e, t, build_contour(spec, e, units[0], 3.0 * margin));
    deform.add(rep_norm(narrow.value - wide.value));
  }
  out.checks.push_back(planes.check());
  out.checks.push_back(deform.check());
  return out;
}

SuiteResult unbounded_suite(Rng& rng) {
  SuiteResult out{"unbounded", {}};
  Tally transform("transform_identity", 1e-9);
  for (int i = 0; i < 100; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const SpectrumReport spec = s_spectrum_exact(t);
    const double rho = spec.norms.rep_norm;
    const double gap = 0.1 * (1.0 + rho);
    double k = 0.0;
    do {
      k = uniform(rng, -2.0 * rho - 1.0, 2.0 * rho + 1.0);
    } while (spectral_distance(spec, k, 0.0) < gap);
    Paravector s;
    do {
      s = admissible_point(rng, spec, t.n(), 1.5 * rho + 1.0, gap);
    } while (std::hypot(s.re() - k, s.vec_norm()) < gap);
    transform.add(transform_residual(s, t, k));
  }
  out.checks.push_back(transform.check());

  Tally correspondence("spectrum_correspondence", 1e-9);
  Tally companion("companion_equals_minus_resolvent", 1e-10);
  Tally routes("chart_vs_direct", 1e-8);
  Tally kind("chart_point_independence", 1e-8);
  Tally phi("chart_transfer_pointwise", 1e-10);
  for (int i = 0; i < 20; ++i) {
    const CliffordMatrix t = random_operator(rng, pick(rng, 1, 3), pick(rng, 1, 3));
    const int n = t.n();
    const double rho = rep_norm(t);
    const double k1 = -(rho + uniform(rng, 0.5, 1.5));
    const double k2 = rho + uniform(rng, 1.5, 2.5);
    const double c = rho + uniform(rng, 0.3, 0.8);
    correspondence.add(spectrum_correspondence_check(t, k1));
    companion.add(rep_norm(companion_operator(t, k2) + s_resolvent(Paravector::real(n, k2), t)));

    const int order = pick(rng, 1, 2);
    const Multivector a0 = random_multivector(rng, n);
    std::vector<Multivector> laurent(static_cast<std::size_t>(order), Multivector(n));
    laurent.back() = random_multivector(rng, n);
    const SliceSeriesFunction f(n, c, {a0}, laurent);
    const ExtendedFunction ef(f, a0);
    const ImagUnit plane = ImagUnit::unit(n, 1);
    const CliffordMatrix via1 = f_of_T_via_chart(ef, t, k1, plane);
    const CliffordMatrix via2 = f_of_T_via_chart(ef, t, k2, plane);
    const CliffordMatrix direct = f_of_T_direct(ef, t, plane).value;
    routes.add(rep_norm(via1 - direct));
    kind.add(rep_norm(via1 - via2));

    const SliceSeriesFunction phi1 = chart_transfer(ef, k1);
    for (int j = 0; j < 5; ++j) {
      const Paravector s = random_paravector(rng, n, uniform(rng, 0.1, 3.0) * (1.0 + rho));
      if (std::hypot(s.re() - c, s.vec_norm()) < 0.1 || std::hypot(s.re() - k1, s.vec_norm()) < 0.1) {
        continue;
      }
      const Multivector fs = eval_series(f, s);
      const Multivector ps = eval_series(phi1, moebius_map(MoebiusChart{k1}, s));
      phi.add((fs - ps).norm() / std::max(1.0, fs.norm()));
    }
  }
  out.checks.push_back(correspondence.check());
  out.checks.push_back(companion.check());
  out.checks.push_back(routes.check());
  out.checks.push_back(kind.check());
  out.checks.push_back(phi.check());
  return out;
}

using SuiteFn = SuiteResult (*)(Rng&);

const std::vector<SuiteFn>& suite_functions() {
  static const std::vector<SuiteFn> fns{kernel_suite,  resolvent_suite, spectrum_suite,
                                        moments_suite, planes_suite,    unbounded_suite};
  return fns;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double SuiteResult::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) {
    if (c.bound && c.upper) m = std::max(m, c.value);
  }
  return m;
}

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"kernel", "resolvent", "spectrum",
                                              "moments", "planes", "unbounded"};
  return names;
}

VerifyReport run_verify(std::string_view suite, std::uint64_t seed) {
  const auto& names = suite_names();
  VerifyReport report;
  report.seed = seed;
  bool matched = false;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (suite != "all" && suite != names[i]) continue;
    matched = true;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    Rng rng(seq);
    report.suites.push_back(suite_functions()[i](rng));
  }
  if (!matched) throw ParseError("unknown suite '" + std::string(suite) + "'");
  return report;
}

nlohmann::ordered_json report_to_json(const VerifyReport& report) {
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& s : report.suites) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      nlohmann::ordered_json j;
      j["name"] = c.name;
      j["samples"] = c.samples;
      j["value"] = c.value;
      if (c.bound) {
        j["bound"] = *c.bound;
        j["kind"] = c.upper ? "max" : "min";
      } else {
        j["kind"] = "info";
      }
      j["pass"] = c.pass;
      checks.push_back(std::move(j));
    }
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["pass"] = s.pass();
    js["max_residual"] = s.max_residual();
    js["checks"] = std::move(checks);
    suites.push_back(std::move(js));
  }
  nlohmann::ordered_json out;
  out["seed"] = report.seed;
  out["pass"] = report.pass();
  out["suites"] = std::move(suites);
  return out;
}

}  // namespace slicecalc
