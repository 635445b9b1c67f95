#include "slicecalc/spectral.hpp"

#include <algorithm>
#include <complex>
#include <optional>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

namespace slicecalc {

namespace {

constexpr int kRefineSteps = 60;
constexpr double kNullityTol = 1e-6;

template <class Matrix>
double sigma_min(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  return sv(sv.size() - 1);
}

int nullity(const Eigen::MatrixXd& m, double tol) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0) return static_cast<int>(sv.size());
  int k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= tol * sv(0)) ++k;
  }
  return k;
}

using Point = std::vector<double>;
using Objective = std::function<double(const Point&)>;

struct GridZero {
  Point x;
  double value;
};

// Zeros of a nonnegative objective on a box: every strict local minimum of
// the grid samples is zoomed in on with a shrinking 5^k stencil, and kept
// if the objective there is below tol. Coordinates never drop below `floor`.
std::vector<GridZero> grid_zeros(const Objective& g, const Point& lower, const Point& upper,
                                 const Point& floor, double step, double tol) {
  const std::size_t k = lower.size();
  std::vector<long> counts(k);
  std::vector<long> strides(k);
  long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    counts[i] = static_cast<long>(std::ceil((upper[i] - lower[i]) / step - 1e-9)) + 1;
    strides[i] = total;
    total *= counts[i];
  }

  auto coords = [&](long flat) {
    std::vector<long> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
      idx[i] = (flat / strides[i]) % counts[i];
    }
    return idx;
  };
  auto point = [&](const std::vector<long>& idx) {
    Point p(k);
    for (std::size_t i = 0; i < k; ++i) p[i] = lower[i] + static_cast<double>(idx[i]) * step;
    return p;
  };

  std::vector<double> values(static_cast<std::size_t>(total));
  for (long f = 0; f < total; ++f) values[static_cast<std::size_t>(f)] = g(point(coords(f)));

  long neighbourhood = 1;
  for (std::size_t i = 0; i < k; ++i) neighbourhood *= 3;

  std::vector<GridZero> found;
  for (long f = 0; f < total; ++f) {
    const auto idx = coords(f);
    const double v = values[static_cast<std::size_t>(f)];
    bool minimum = true;
    bool strict = false;
    for (long o = 0; o < neighbourhood && minimum; ++o) {
      long rest = o;
      long nf = 0;
      bool inside = true;
      bool self = true;
      for (std::size_t i = 0; i < k; ++i) {
        const long off = rest % 3 - 1;
        rest /= 3;
        if (off != 0) self = false;
        const long j = idx[i] + off;
        if (j < 0 || j >= counts[i]) {
          inside = false;
          break;
        }
        nf += j * strides[i];
      }
      if (!inside || self) continue;
      const double w = values[static_cast<std::size_t>(nf)];
      if (w < v) minimum = false;
      if (w > v) strict = true;
    }
    if (!minimum || !strict) continue;

    Point x = point(idx);
    double best = v;
    double width = step;
    long stencil = 1;
    for (std::size_t i = 0; i < k; ++i) stencil *= 5;
    for (int it = 0; it < kRefineSteps; ++it) {
      Point centre = x;
      for (long o = 0; o < stencil; ++o) {
        long rest = o;
        Point y = centre;
        for (std::size_t i = 0; i < k; ++i) {
          const double off = 0.5 * static_cast<double>(rest % 5 - 2);
          rest /= 5;
          y[i] = std::max(floor[i], centre[i] + off * width);
        }
        const double w = g(y);
        if (w < best) {
          best = w;
          x = y;
        }
      }
      width *= 0.5;
    }
    if (best < tol) found.push_back({x, best});
  }

  std::sort(found.begin(), found.end(),
            [](const GridZero& a, const GridZero& b) { return a.value < b.value; });
  std::vector<GridZero> kept;
  for (const auto& z : found) {
    bool fresh = true;
    for (const auto& q : kept) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < k; ++i) d2 += (z.x[i] - q.x[i]) * (z.x[i] - q.x[i]);
      if (std::sqrt(d2) <= step) {
        fresh = false;
        break;
      }
    }
    if (fresh) kept.push_back(z);
  }
  std::sort(kept.begin(), kept.end(),
            [](const GridZero& a, const GridZero& b) { return a.x < b.x; });
  return kept;
}

Eigen::MatrixXd rep_pencil(const Eigen::MatrixXd& a, const Eigen::MatrixXd& a2, double u,
                           double r) {
  Eigen::MatrixXd p = a2 - 2.0 * u * a;
  p.diagonal().array() += u * u + r * r;
  return p;
}

double matrix_two_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace

std::string to_string(SpectrumMethod m) { return m == SpectrumMethod::exact ? "exact" : "scan"; }

std::string to_string(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::guaranteed: return "guaranteed";
    case SeriesStatus::unverified: return "unverified";
    case SeriesStatus::divergent: return "divergent";
  }
  return "divergent";
}

CliffordMatrix pencil(const CliffordMatrix& t, double u, double r) {
  if (r < 0.0) throw DomainError("pencil needs r >= 0");
  CliffordMatrix p = t * t;
  p -= (2.0 * u) * t;
  p += CliffordMatrix::scalar(Multivector::scalar(t.n(), u * u + r * r), t.d());
  return p;
}

SpectrumReport s_spectrum_exact(const CliffordMatrix& t, double cluster_tol) {
  const RealRep a = real_rep(t);
  Eigen::EigenSolver<RealRep> es(a, false);
  if (es.info() != Eigen::Success) throw SolverError("eigenvalue solver did not converge");
  const Eigen::VectorXcd lambda = es.eigenvalues();
  const auto count = static_cast<std::size_t>(lambda.size());

  SpectrumReport rep;
  rep.method = SpectrumMethod::exact;
  rep.cluster_tol = cluster_tol;
  rep.norms = op_norms(t);

  std::vector<double> us(count);
  std::vector<double> rs(count);
  for (std::size_t i = 0; i < count; ++i) {
    us[i] = lambda(static_cast<Eigen::Index>(i)).real();
    rs[i] = std::abs(lambda(static_cast<Eigen::Index>(i)).imag());
  }

  // Single-linkage clustering.
  std::vector<std::size_t> parent(count);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (std::hypot(us[i] - us[j], rs[i] - rs[j]) <= cluster_tol) parent[root(i)] = root(j);
    }
  }

  const double snap = 1e-13 * std::max(1.0, rep.norms.rep_norm);
  std::vector<std::size_t> heads;
  for (std::size_t i = 0; i < count; ++i) {
    if (root(i) == i) heads.push_back(i);
  }
  for (std::size_t h : heads) {
    double su = 0.0;
    double sr = 0.0;
    int m = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (root(i) == h) {
        su += us[i];
        sr += rs[i];
        ++m;
      }
    }
    SpectrumComponent c{su / m, sr / m, m};
    if (std::abs(c.u) < snap) c.u = 0.0;
    if (c.r < std::max(snap, cluster_tol)) c.r = 0.0;
    rep.components.push_back(c);
  }
  std::sort(rep.components.begin(), rep.components.end(),
            [](const SpectrumComponent& x, const SpectrumComponent& y) {
              return x.u != y.u ? x.u < y.u : x.r < y.r;
            });
  if (rep.components.empty()) throw SolverError("empty spectrum");
  return rep;
}

ScanOptions default_scan_options(const CliffordMatrix& t, double step, double tol) {
  const double radius = rep_norm(t);
  ScanOptions opt;
  opt.step = step > 0.0 ? step : std::max(radius, 1.0) / 100.0;
  opt.u_min = -radius - opt.step;
  opt.u_max = radius + opt.step;
  opt.r_max = radius + opt.step;
  opt.tol = tol;
  return opt;
}

namespace {

using Complex = std::complex<double>;

// Two-sided Rayleigh quotient iteration for an eigenvalue of A near z,
// seeded by inverse iteration at the fixed shift z. Gives up when the
// iterate leaves the disc of radius `reach` about the start.
std::optional<Complex> rayleigh_refine(const Eigen::MatrixXcd& a, Complex z, double reach) {
  const Complex start = z;
  const Eigen::Index size = a.rows();
  Eigen::VectorXcd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = Complex(1.0 + 0.1 * static_cast<double>(i), 0.3);
  v.normalize();
  Eigen::VectorXcd w = v;
  auto finite = [](const Eigen::VectorXcd& x) { return x.allFinite() && x.norm() > 0.0; };
  for (int it = 0; it < 60; ++it) {
    Eigen::MatrixXcd m = a;
    m.diagonal().array() -= z;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
    const Eigen::VectorXcd nv = lu.solve(v);
    const Eigen::VectorXcd nw = lu.adjoint().solve(w);
    if (!finite(nv) || !finite(nw)) return z;  // A - zI exactly singular
    v = nv.normalized();
    w = nw.normalized();
    if (it < 3) continue;  // inverse iteration at the starting shift
    const Complex denom = w.dot(v);
    if (std::abs(denom) < 1e-14) return std::nullopt;
    const Complex next = w.dot(a * v) / denom;
    const Complex dz = next - z;
    z = next;
    if (std::abs(z - start) > reach) return std::nullopt;
    if (std::abs(dz) <= 1e-15 * (1.0 + std::abs(z))) return z;
  }
  return z;
}

}  // namespace

SpectrumReport s_spectrum_scan(const CliffordMatrix& t, const ScanOptions& opt) {
  if (!(opt.step > 0.0) || !(opt.tol > 0.0)) throw DomainError("scan step and tol must be positive");
  if (opt.u_min > opt.u_max || opt.r_max < 0.0) throw DomainError("empty scan range");
  const OperatorNorms norms = op_norms(t);
  const double radius = norms.rep_norm;
  if (opt.u_min > -radius || opt.u_max < radius || opt.r_max < radius) {
    throw DomainError("scan ranges do not cover the norm ball |s| <= " + std::to_string(radius));
  }

  const RealRep a = real_rep(t);
  const RealRep a2 = a * a;
  const Eigen::MatrixXcd ac = a.cast<Complex>();

  // rep(pencil) = (A - zI)(A - conj(z)I) with z = u + ir, and A is real, so
  // the pencil is singular iff h(z) = sigma_min(A - zI) vanishes. h is
  // 1-Lipschitz, hence every zero has a grid point within step/sqrt(2)
  // where h <= step/sqrt(2).
  auto h = [&](Complex z) {
    Eigen::MatrixXcd m = ac;
    m.diagonal().array() -= z;
    return sigma_min(m);
  };
  const double step = opt.step;
  const long nu = static_cast<long>(std::ceil((opt.u_max - opt.u_min) / step - 1e-9)) + 1;
  const long nr = static_cast<long>(std::ceil(opt.r_max / step - 1e-9)) + 1;
  const double threshold = step * std::sqrt(0.5) * (1.0 + 1e-9);
  // h(z) <= threshold iff M^* M - threshold^2 I is not positive definite,
  // M = A - zI; a failed Cholesky factorization is the cheap test.
  auto below = [&](Complex z) {
    Eigen::MatrixXcd m = ac;
    m.diagonal().array() -= z;
    Eigen::MatrixXcd gram = m.adjoint() * m;
    gram.diagonal().array() -= threshold * threshold;
    return Eigen::LLT<Eigen::MatrixXcd>(gram).info() != Eigen::Success;
  };
  std::vector<Complex> candidates;
  for (long i = 0; i < nu; ++i) {
    for (long j = 0; j < nr; ++j) {
      const Complex z(opt.u_min + static_cast<double>(i) * step, static_cast<double>(j) * step);
      if (below(z)) candidates.push_back(z);
    }
  }

  // Measured against the term-wise bound on |rep pencil| rather than the
  // norm itself, which vanishes at the spectrum of scalar-like operators.
  auto singular_pencil = [&](double u, double r) {
    const double scale = radius * radius + 2.0 * std::abs(u) * radius + u * u + r * r;
    return sigma_min(rep_pencil(a, a2, u, r)) <= opt.tol * scale;
  };
  std::vector<Point> found;
  auto near_found = [&](double u, double r, double dist) {
    return std::any_of(found.begin(), found.end(),
                       [&](const Point& p) { return std::hypot(p[0] - u, p[1] - r) <= dist; });
  };
  auto accept = [&](Complex z) {
    const double u = z.real();
    const double r = std::abs(z.imag());
    if (near_found(u, r, step) || !singular_pencil(u, r)) return;
    found.push_back({u, r});
  };

  // A zero farther than one step from every accepted point has its nearest
  // grid point farther than (1 - sqrt(1/2)) step from them, so candidates
  // inside that radius can be skipped.
  const double skip = (1.0 - std::sqrt(0.5)) * step;
  std::vector<Complex> unresolved;
  for (const Complex& z0 : candidates) {
    if (near_found(z0.real(), z0.imag(), skip)) continue;
    if (const auto z = rayleigh_refine(ac, z0, 2.0 * step)) {
      accept(*z);
    } else {
      unresolved.push_back(z0);
    }
  }
  // Pattern search on h for candidates that the iteration could not settle and
  // that no accepted point explains.
  const Objective hp = [&](const Point& p) { return h(Complex(p[0], p[1])); };
  for (const Complex& z0 : unresolved) {
    if (near_found(z0.real(), z0.imag(), skip)) continue;
    Point x{z0.real(), z0.imag()};
    double best = hp(x);
    double width = step;
    for (int it = 0; it < kRefineSteps; ++it) {
      const Point centre = x;
      for (int o = 0; o < 25; ++o) {
        const Point y{centre[0] + 0.5 * (o % 5 - 2) * width,
                      std::max(0.0, centre[1] + 0.5 * (o / 5 - 2) * width)};
        const double w = hp(y);
        if (w < best) {
          best = w;
          x = y;
        }
      }
      width *= 0.5;
    }
    accept(Complex(x[0], x[1]));
  }

  const double snap = 1e-13 * std::max(1.0, radius);
  SpectrumReport rep;
  rep.method = SpectrumMethod::scan;
  rep.scan_step = step;
  rep.scan_tol = opt.tol;
  rep.norms = norms;
  for (auto& p : found) {
    if (std::abs(p[0]) < snap) p[0] = 0.0;
    if (p[1] < snap) p[1] = 0.0;
    const int m = nullity(rep_pencil(a, a2, p[0], p[1]), kNullityTol);
    rep.components.push_back({p[0], p[1], std::max(m, 1)});
  }
  std::sort(rep.components.begin(), rep.components.end(),
            [](const SpectrumComponent& x, const SpectrumComponent& y) {
              return x.u != y.u ? x.u < y.u : x.r < y.r;
            });
  if (rep.components.empty()) {
    throw SolverError("scan found no spectrum; step or tolerance is misconfigured");
  }
  return rep;
}

double spectral_distance(const SpectrumReport& spec, double u, double r) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : spec.components) best = std::min(best, std::hypot(c.u - u, c.r - r));
  return best;
}

double hausdorff_distance(const SpectrumReport& a, const SpectrumReport& b) {
  double h = 0.0;
  for (const auto& c : a.components) h = std::max(h, spectral_distance(b, c.u, c.r));
  for (const auto& c : b.components) h = std::max(h, spectral_distance(a, c.u, c.r));
  if (a.components.empty() != b.components.empty()) return std::numeric_limits<double>::infinity();
  return h;
}

std::vector<ModuleVector> pencil_null_vectors(const CliffordMatrix& t, double u, double r,
                                              double tol) {
  const RealRep p = real_rep(pencil(t, u, r));
  Eigen::JacobiSVD<RealRep> svd(p, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double rho = rep_norm(t);
  const double scale = rho * rho + 2.0 * std::abs(u) * rho + u * u + r * r;
  std::vector<ModuleVector> out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= tol * scale) {
      out.push_back(ModuleVector::from_coords(t.n(), t.d(), svd.matrixV().col(i)));
    }
  }
  return out;
}

CliffordMatrix s_resolvent(const Paravector& s, const CliffordMatrix& t) {
  if (s.n() != t.n()) throw DimensionMismatch("paravector and operator algebras differ");
  const double u = s.re();
  const double r = s.vec_norm();
  CliffordMatrix inv;
  try {
    inv = invert(pencil(t, u, r));
  } catch (const SingularElement&) {
    throw SpectrumHit(u, r, "s lies in the S-spectrum (u=" + std::to_string(u) +
                                ", r=" + std::to_string(r) + ")");
  }
  const CliffordMatrix shifted = t - CliffordMatrix::scalar(para_conj(s).to_multivector(), t.d());
  return -(inv * shifted);
}

SeriesResolvent s_resolvent_series(const Paravector& s, const CliffordMatrix& t, int terms) {
  if (s.n() != t.n()) throw DimensionMismatch("paravector and operator algebras differ");
  if (terms < 0) throw DomainError("number of terms must be nonnegative");
  const double modulus = s.norm();
  if (modulus == 0.0) throw SingularElement("series resolvent at s = 0");
  const OperatorNorms norms = op_norms(t);

  SeriesResolvent out;
  out.ratio = norms.rep_norm / modulus;
  if (norms.rep_norm < modulus) {
    out.status = SeriesStatus::guaranteed;
  } else if (norms.blade_norm < modulus) {
    out.status = SeriesStatus::unverified;
  } else {
    out.status = SeriesStatus::divergent;
  }

  const Multivector s_inv = para_inv(s).to_multivector();
  CliffordMatrix tp = CliffordMatrix::identity(t.n(), t.d());
  Multivector sp = s_inv;
  CliffordMatrix sum(t.n(), t.d());
  for (int m = 0; m <= terms; ++m) {
    sum += tp * sp;
    tp = tp * t;
    sp = sp * s_inv;
  }
  out.value = std::move(sum);
  return out;
}

double resolvent_equation_residual(const Paravector& s, const CliffordMatrix& t) {
  const CliffordMatrix res = s_resolvent(s, t);
  CliffordMatrix lhs = res * s.to_multivector();
  lhs -= t * res;
  lhs -= CliffordMatrix::identity(t.n(), t.d());
  return rep_norm(lhs);
}

namespace {

CliffordMatrix real_shift_inverse(const Paravector& s, const CliffordMatrix& t) {
  const double u = s.re();
  try {
    return invert(CliffordMatrix::scalar(Multivector::scalar(t.n(), u), t.d()) - t);
  } catch (const SingularElement&) {
    throw SpectrumHit(u, 0.0, "Re[s] lies in the S-spectrum");
  }
}

}  // namespace

double left_expansion_ratio(const Paravector& s, const CliffordMatrix& t) {
  if (s.n() != t.n()) throw DimensionMismatch("paravector and operator algebras differ");
  return s.vec_norm() * rep_norm(real_shift_inverse(s, t));
}

CliffordMatrix left_resolvent_expansion(const Paravector& s, const CliffordMatrix& t, int terms) {
  if (s.n() != t.n()) throw DimensionMismatch("paravector and operator algebras differ");
  if (terms < 0) throw DomainError("number of terms must be nonnegative");
  const CliffordMatrix b = real_shift_inverse(s, t);
  const double ratio = s.vec_norm() * rep_norm(b);
  if (!(ratio < 1.0)) {
    throw DomainError("left expansion needs |vec s| |(Re s I - T)^{-1}| < 1, got " +
                      std::to_string(ratio));
  }
  // Re[s] - s = -vec(s).
  Multivector w = -s.to_multivector();
  w[0] = 0.0;
  CliffordMatrix bp = b;
  Multivector wp = Multivector::scalar(t.n(), 1.0);
  CliffordMatrix sum(t.n(), t.d());
  for (int m = 0; m <= terms; ++m) {
    sum += bp * wp;
    bp = b * bp;
    wp = wp * w;
  }
  return sum;
}

std::vector<std::vector<double>> commuting_gamma_spectrum(const std::vector<Eigen::MatrixXd>& ts,
                                                          double step, double tol) {
  if (ts.empty()) throw DomainError("need at least one matrix");
  const Eigen::Index d = ts.front().rows();
  for (const auto& m : ts) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("matrices must be square of one size");
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = i + 1; j < ts.size(); ++j) {
      const double scale = 1.0 + matrix_two_norm(ts[i]) * matrix_two_norm(ts[j]);
      if (matrix_two_norm(ts[i] * ts[j] - ts[j] * ts[i]) > 1e-12 * scale) {
        throw DomainError("matrices " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                          " do not commute");
      }
    }
  }

  const std::size_t k = ts.size();
  Point lo(k);
  Point hi(k);
  double span = 0.0;
  double base = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(ts[i], false);
    if (es.info() != Eigen::Success) throw SolverError("eigenvalue solver did not converge");
    const Eigen::VectorXcd ev = es.eigenvalues();
    const double scale = 1.0 + matrix_two_norm(ts[i]);
    lo[i] = std::numeric_limits<double>::infinity();
    hi[i] = -std::numeric_limits<double>::infinity();
    for (Eigen::Index e = 0; e < ev.size(); ++e) {
      if (std::abs(ev(e).imag()) > 1e-8 * scale) {
        throw DomainError("matrix " + std::to_string(i + 1) + " has complex eigenvalues");
      }
      lo[i] = std::min(lo[i], ev(e).real());
      hi[i] = std::max(hi[i], ev(e).real());
    }
    span = std::max(span, hi[i] - lo[i]);
    base += matrix_two_norm(ts[i]) * matrix_two_norm(ts[i]);
  }
  if (base == 0.0) base = 1.0;
  if (!(step > 0.0)) step = std::max(span, 1.0) / 40.0;
  Point floor(k, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < k; ++i) {
    lo[i] -= step;
    hi[i] += step;
  }

  const Objective g = [&](const Point& lambda) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
    double norm = base;
    for (std::size_t j = 0; j < k; ++j) {
      Eigen::MatrixXd shifted = -ts[j];
      shifted.diagonal().array() += lambda[j];
      sum += shifted * shifted;
      norm += lambda[j] * lambda[j];
    }
    return sigma_min(sum) / norm;
  };
  std::vector<std::vector<double>> out;
  for (auto& z : grid_zeros(g, lo, hi, floor, step, tol)) out.push_back(std::move(z.x));
  return out;
}

}  // namespace slicecalc
