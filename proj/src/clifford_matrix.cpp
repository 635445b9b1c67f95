#include "slicecalc/clifford_matrix.hpp"

#include <cmath>
#include <string>

namespace slicecalc {

namespace {

void check_same(const CliffordMatrix& a, const CliffordMatrix& b) {
  if (a.n() != b.n() || a.d() != b.d()) {
    throw DimensionMismatch("operators of shape (n=" + std::to_string(a.n()) +
                            ", d=" + std::to_string(a.d()) + ") and (n=" +
                            std::to_string(b.n()) + ", d=" + std::to_string(b.d()) + ")");
  }
}

bool is_zero(const Eigen::MatrixXd& m) { return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0; }

std::vector<std::size_t> nonzero_blades(const CliffordMatrix& t) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < t.blade_count(); ++a) {
    if (!is_zero(t.blade(a))) out.push_back(a);
  }
  return out;
}

double two_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

}  // namespace

CliffordMatrix::CliffordMatrix(int n, int d) : n_(n), d_(d) {
  if (d < 1) throw DimensionMismatch("module dimension must be positive");
  const std::size_t count = sign_table(n).dim();
  blades_.assign(count, Eigen::MatrixXd::Zero(d, d));
}

CliffordMatrix::CliffordMatrix(int n, int d, std::vector<Eigen::MatrixXd> blades)
    : n_(n), d_(d), blades_(std::move(blades)) {
  if (d < 1) throw DimensionMismatch("module dimension must be positive");
  if (blades_.size() != sign_table(n).dim()) {
    throw DimensionMismatch("expected 2^n blade matrices");
  }
  for (const auto& m : blades_) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("blade matrix is not d x d");
  }
}

CliffordMatrix CliffordMatrix::identity(int n, int d) {
  CliffordMatrix t(n, d);
  t.blades_[0].setIdentity();
  return t;
}

CliffordMatrix CliffordMatrix::scalar(const Multivector& a, int d) {
  CliffordMatrix t(a.n(), d);
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] != 0.0) t.blades_[m] = a[m] * Eigen::MatrixXd::Identity(d, d);
  }
  return t;
}

Multivector CliffordMatrix::entry(int i, int j) const {
  Multivector m(n_);
  for (std::size_t a = 0; a < blades_.size(); ++a) m[a] = blades_[a](i, j);
  return m;
}

bool CliffordMatrix::is_paravector(double tol) const {
  for (std::size_t a = 0; a < blades_.size(); ++a) {
    if (grade(BladeIndex{static_cast<std::uint32_t>(a)}) > 1 &&
        blades_[a].cwiseAbs().maxCoeff() > tol) {
      return false;
    }
  }
  return true;
}

CliffordMatrix& CliffordMatrix::operator+=(const CliffordMatrix& o) {
  check_same(*this, o);
  for (std::size_t a = 0; a < blades_.size(); ++a) blades_[a] += o.blades_[a];
  return *this;
}

CliffordMatrix& CliffordMatrix::operator-=(const CliffordMatrix& o) {
  check_same(*this, o);
  for (std::size_t a = 0; a < blades_.size(); ++a) blades_[a] -= o.blades_[a];
  return *this;
}

CliffordMatrix& CliffordMatrix::operator*=(double s) {
  for (auto& m : blades_) m *= s;
  return *this;
}

CliffordMatrix operator+(CliffordMatrix a, const CliffordMatrix& b) { return a += b; }
CliffordMatrix operator-(CliffordMatrix a, const CliffordMatrix& b) { return a -= b; }
CliffordMatrix operator-(CliffordMatrix a) { return a *= -1.0; }
CliffordMatrix operator*(double s, CliffordMatrix a) { return a *= s; }

CliffordMatrix operator*(const CliffordMatrix& s, const CliffordMatrix& t) {
  check_same(s, t);
  const SignTable& table = sign_table(s.n());
  CliffordMatrix out(s.n(), s.d());
  const auto sa = nonzero_blades(s);
  const auto tb = nonzero_blades(t);
  for (std::size_t a : sa) {
    for (std::size_t b : tb) {
      out.blade(a ^ b).noalias() += table.sign(a, b) * (s.blade(a) * t.blade(b));
    }
  }
  return out;
}

CliffordMatrix operator*(const CliffordMatrix& t, const Multivector& a) {
  if (a.n() != t.n()) throw DimensionMismatch("Clifford scalar from a different algebra");
  const SignTable& table = sign_table(t.n());
  CliffordMatrix out(t.n(), t.d());
  const auto ta = nonzero_blades(t);
  for (std::size_t x : ta) {
    for (std::size_t b = 0; b < a.size(); ++b) {
      if (a[b] == 0.0) continue;
      out.blade(x ^ b) += (table.sign(x, b) * a[b]) * t.blade(x);
    }
  }
  return out;
}

CliffordMatrix operator*(const Multivector& a, const CliffordMatrix& t) {
  return CliffordMatrix::scalar(a, t.d()) * t;
}

CliffordMatrix power(const CliffordMatrix& t, int m) {
  if (m < 0) throw DomainError("negative operator power; use invert()");
  CliffordMatrix out = CliffordMatrix::identity(t.n(), t.d());
  for (int i = 0; i < m; ++i) out = out * t;
  return out;
}

// ---------------------------------------------------------------------------

ParavectorOperator::ParavectorOperator(int n, std::vector<Eigen::MatrixXd> components)
    : n_(n), components_(std::move(components)) {
  if (n < 0 || n > kMaxAlgebraDim) throw DimensionMismatch("algebra dimension out of range");
  if (components_.size() != static_cast<std::size_t>(n) + 1) {
    throw DimensionMismatch("paravector operator needs n + 1 components");
  }
  const auto d = components_.front().rows();
  if (d < 1) throw DimensionMismatch("module dimension must be positive");
  for (const auto& m : components_) {
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("component is not d x d");
  }
}

ParavectorOperator ParavectorOperator::from_clifford(const CliffordMatrix& t) {
  if (!t.is_paravector()) throw DomainError("operator has components of grade >= 2");
  std::vector<Eigen::MatrixXd> comps;
  comps.push_back(t.blade(0));
  for (int j = 0; j < t.n(); ++j) comps.push_back(t.blade(std::size_t{1} << j));
  return ParavectorOperator(t.n(), std::move(comps));
}

CliffordMatrix ParavectorOperator::to_clifford() const {
  CliffordMatrix t(n_, d());
  t.blade(0) = components_[0];
  for (int j = 0; j < n_; ++j) t.blade(std::size_t{1} << j) = components_[static_cast<std::size_t>(j) + 1];
  return t;
}

// ---------------------------------------------------------------------------

ModuleVector::ModuleVector(int n, int d) : n_(n), d_(d) {
  blades_.assign(sign_table(n).dim(), Eigen::VectorXd::Zero(d));
}

ModuleVector::ModuleVector(int n, int d, std::vector<Eigen::VectorXd> blades)
    : n_(n), d_(d), blades_(std::move(blades)) {
  if (blades_.size() != sign_table(n).dim()) throw DimensionMismatch("expected 2^n blade vectors");
  for (const auto& v : blades_) {
    if (v.size() != d) throw DimensionMismatch("blade vector has wrong length");
  }
}

ModuleVector ModuleVector::from_coords(int n, int d, const Eigen::VectorXd& coords) {
  ModuleVector v(n, d);
  if (coords.size() != static_cast<Eigen::Index>(v.blades_.size()) * d) {
    throw DimensionMismatch("coordinate vector has wrong length");
  }
  for (std::size_t b = 0; b < v.blades_.size(); ++b) {
    v.blades_[b] = coords.segment(static_cast<Eigen::Index>(b) * d, d);
  }
  return v;
}

Eigen::VectorXd ModuleVector::coords() const {
  Eigen::VectorXd c(static_cast<Eigen::Index>(blades_.size()) * d_);
  for (std::size_t b = 0; b < blades_.size(); ++b) {
    c.segment(static_cast<Eigen::Index>(b) * d_, d_) = blades_[b];
  }
  return c;
}

double ModuleVector::norm() const { return coords().norm(); }

RealRep real_rep(const CliffordMatrix& t) {
  const SignTable& table = sign_table(t.n());
  const auto dim = static_cast<Eigen::Index>(table.dim());
  const Eigen::Index d = t.d();
  RealRep rep = RealRep::Zero(dim * d, dim * d);
  for (std::size_t a : nonzero_blades(t)) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const Eigen::Index c = static_cast<Eigen::Index>(a) ^ b;
      rep.block(c * d, b * d, d, d) += table.sign(a, static_cast<std::size_t>(b)) * t.blade(a);
    }
  }
  return rep;
}

CliffordMatrix from_real_rep(const RealRep& rep, int n, int d) {
  const auto dim = static_cast<Eigen::Index>(sign_table(n).dim());
  if (rep.rows() != dim * d || rep.cols() != dim * d) {
    throw DimensionMismatch("representation matrix has wrong size");
  }
  CliffordMatrix t(n, d);
  for (Eigen::Index a = 0; a < dim; ++a) {
    t.blade(static_cast<std::size_t>(a)) = rep.block(a * d, 0, d, d);
  }
  return t;
}

ModuleVector apply(const CliffordMatrix& t, const ModuleVector& v) {
  if (t.n() != v.n() || t.d() != v.d()) throw DimensionMismatch("operator and vector shapes differ");
  const SignTable& table = sign_table(t.n());
  ModuleVector out(t.n(), t.d());
  for (std::size_t a : nonzero_blades(t)) {
    for (std::size_t b = 0; b < table.dim(); ++b) {
      out.blade(a ^ b).noalias() += table.sign(a, b) * (t.blade(a) * v.blade(b));
    }
  }
  return out;
}

CliffordMatrix invert(const CliffordMatrix& t) {
  const RealRep rep = real_rep(t);
  const Eigen::Index size = rep.rows();
  Eigen::PartialPivLU<RealRep> lu(rep);
  // rcond > 1e-10 already implies sigma_min / sigma_max > 1e-12 at these sizes.
  if (!(lu.rcond() > 1e-10)) {
    Eigen::JacobiSVD<RealRep> svd(rep);
    const auto& sv = svd.singularValues();
    if (sv(0) == 0.0 || sv(size - 1) < 1e-12 * sv(0)) {
      throw SingularElement("operator is not invertible");
    }
  }
  // Columns of the inverse applied to the scalar-blade basis vectors.
  const Eigen::MatrixXd first = lu.solve(RealRep::Identity(size, t.d()));
  CliffordMatrix out(t.n(), t.d());
  for (std::size_t a = 0; a < out.blade_count(); ++a) {
    out.blade(a) = first.block(static_cast<Eigen::Index>(a) * t.d(), 0, t.d(), t.d());
  }
  return out;
}

OperatorNorms op_norms(const CliffordMatrix& t) {
  double sum = 0.0;
  for (std::size_t a = 0; a < t.blade_count(); ++a) {
    const double s = two_norm(t.blade(a));
    sum += s * s;
  }
  return {std::sqrt(sum), rep_norm(t)};
}

double rep_norm(const CliffordMatrix& t) { return two_norm(real_rep(t)); }

}  // namespace slicecalc
