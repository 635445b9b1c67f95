#include "slicecalc/clifford.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>

namespace slicecalc {

namespace {

void check_dim(int n) {
  if (n < 0 || n > kMaxAlgebraDim) {
    throw DimensionMismatch("algebra dimension " + std::to_string(n) +
                            " outside [0, " + std::to_string(kMaxAlgebraDim) +
                            "]");
  }
}

void check_same(const Multivector& a, const Multivector& b) {
  if (a.n() != b.n()) {
    throw DimensionMismatch("multivectors from R_" + std::to_string(a.n()) +
                            " and R_" + std::to_string(b.n()));
  }
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace

BladeProduct blade_product(BladeIndex a, BladeIndex b) {
  // Each unit of b must move left past every higher unit of a.
  int swaps = 0;
  for (std::uint32_t m = a.mask >> 1; m != 0; m >>= 1) {
    swaps += std::popcount(m & b.mask);
  }
  int contractions = std::popcount(a.mask & b.mask);
  int sign = ((swaps + contractions) & 1) ? -1 : 1;
  return {sign, BladeIndex{a.mask ^ b.mask}};
}

int grade(BladeIndex b) { return std::popcount(b.mask); }

std::string blade_name(BladeIndex b) {
  if (b.mask == 0) return "";
  std::string name = "e";
  for (int i = 0; i < 32; ++i) {
    if (b.mask & (1u << i)) name += std::to_string(i + 1);
  }
  return name;
}

SignTable::SignTable(int n) : n_(n), dim_(std::size_t{1} << n) {
  check_dim(n);
  signs_.resize(dim_ * dim_);
  for (std::size_t a = 0; a < dim_; ++a) {
    for (std::size_t b = 0; b < dim_; ++b) {
      auto p = blade_product(BladeIndex{static_cast<std::uint32_t>(a)},
                             BladeIndex{static_cast<std::uint32_t>(b)});
      signs_[a * dim_ + b] = static_cast<signed char>(p.sign);
    }
  }
}

const SignTable& sign_table(int n) {
  check_dim(n);
  static const auto tables = [] {
    std::array<std::unique_ptr<SignTable>, kMaxAlgebraDim + 1> t;
    for (int k = 0; k <= kMaxAlgebraDim; ++k) {
      t[k] = std::make_unique<SignTable>(k);
    }
    return t;
  }();
  return *tables[n];
}

// ---------------------------------------------------------------------------

Multivector::Multivector(int n) : n_(n) {
  check_dim(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

Multivector Multivector::scalar(int n, double value) {
  Multivector m(n);
  m.coeffs_[0] = value;
  return m;
}

Multivector Multivector::unit(int n, int i) {
  if (i < 1 || i > n) {
    throw DimensionMismatch("unit e" + std::to_string(i) + " not in R_" +
                            std::to_string(n));
  }
  return blade(n, BladeIndex{1u << (i - 1)});
}

Multivector Multivector::blade(int n, BladeIndex b, double value) {
  Multivector m(n);
  if (b.mask >= m.size()) {
    throw DimensionMismatch(blade_name(b) + " not in R_" + std::to_string(n));
  }
  m.coeffs_[b.mask] = value;
  return m;
}

double Multivector::norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

bool Multivector::is_zero() const {
  for (double c : coeffs_) {
    if (c != 0.0) return false;
  }
  return true;
}

bool Multivector::is_scalar(double tol) const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (std::abs(coeffs_[i]) > tol) return false;
  }
  return true;
}

bool Multivector::is_paravector(double tol) const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (std::popcount(i) > 1 && std::abs(coeffs_[i]) > tol) return false;
  }
  return true;
}

Multivector Multivector::promote(int m) const {
  if (m < n_) {
    throw DimensionMismatch("cannot promote R_" + std::to_string(n_) +
                            " into R_" + std::to_string(m));
  }
  Multivector out(m);
  std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin());
  return out;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

Multivector& Multivector::operator/=(double s) {
  for (double& c : coeffs_) c /= s;
  return *this;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(double s, Multivector a) { return a *= s; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator/(Multivector a, double s) { return a /= s; }

Multivector mv_mul(const Multivector& a, const Multivector& b) {
  check_same(a, b);
  const SignTable& table = sign_table(a.n());
  const std::size_t dim = table.dim();
  Multivector out(a.n());
  for (std::size_t i = 0; i < dim; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      out[i ^ j] += table.sign(i, j) * ai * bj;
    }
  }
  return out;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return mv_mul(a, b);
}

Eigen::MatrixXd left_regular(const Multivector& a) {
  const SignTable& table = sign_table(a.n());
  const auto dim = static_cast<Eigen::Index>(table.dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (a[i] == 0.0) continue;
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i ^ j, j) += table.sign(i, j) * a[i];
    }
  }
  return m;
}

Multivector mv_inverse(const Multivector& a) {
  const double scale = a.norm();
  if (scale == 0.0) throw SingularElement("zero multivector has no inverse");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(left_regular(a));
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (min_pivot < 1e-12 * scale) {
    throw SingularElement("multivector " + to_string(a) + " is not invertible");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(a.size()));
  rhs(0) = 1.0;
  Eigen::VectorXd y = lu.solve(rhs);
  Multivector out(a.n());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = y(static_cast<Eigen::Index>(i));
  return out;
}

std::string to_string(const Multivector& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double c = a[i];
    if (c == 0.0) continue;
    const bool neg = std::signbit(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const double mag = std::abs(c);
    if (i == 0) {
      out += format_double(mag);
    } else {
      if (mag != 1.0) out += format_double(mag) + " ";
      out += blade_name(BladeIndex{static_cast<std::uint32_t>(i)});
    }
  }
  return out.empty() ? "0" : out;
}

Multivector parse_multivector(std::string_view text, int n) {
  Multivector out(n);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("multivector \"" + std::string(text) + "\" at offset " +
                      std::to_string(pos) + ": " + why);
  };

  bool first = true;
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    double sign = 1.0;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip_ws();
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }

    double coeff = 1.0;
    bool has_coeff = false;
    if (pos < text.size() &&
        (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), coeff);
      if (ec != std::errc{}) throw fail("bad number");
      pos = static_cast<std::size_t>(ptr - text.data());
      has_coeff = true;
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
      }
    }

    BladeProduct blade{1, BladeIndex{0}};
    bool has_blade = false;
    if (pos + 1 < text.size() && text[pos] == 'e' &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const int i = text[pos] - '0';
        if (i < 1 || i > n) throw fail("unit e" + std::to_string(i) + " not in R_" + std::to_string(n));
        auto p = blade_product(blade.blade, BladeIndex{1u << (i - 1)});
        blade = {blade.sign * p.sign, p.blade};
        ++pos;
      }
      has_blade = true;
    }
    if (!has_coeff && !has_blade) throw fail("expected a number or a blade");

    out[blade.blade.mask] += sign * coeff * blade.sign;
    first = false;
  }
  if (first) throw fail("empty");
  return out;
}

// ---------------------------------------------------------------------------

ImagUnit::ImagUnit(std::vector<double> dirs) : dirs_(std::move(dirs)) {
  if (static_cast<int>(dirs_.size()) > kMaxAlgebraDim) {
    throw DimensionMismatch("imaginary unit with too many components");
  }
  double s = 0.0;
  for (double d : dirs_) s += d * d;
  if (s == 0.0 || !std::isfinite(s)) {
    throw DomainError("imaginary unit needs a nonzero finite direction");
  }
  const double inv = 1.0 / std::sqrt(s);
  for (double& d : dirs_) d *= inv;
}

ImagUnit ImagUnit::unit(int n, int i) {
  if (i < 1 || i > n) {
    throw DimensionMismatch("unit e" + std::to_string(i) + " not in R_" + std::to_string(n));
  }
  std::vector<double> dirs(static_cast<std::size_t>(n), 0.0);
  dirs[static_cast<std::size_t>(i - 1)] = 1.0;
  return ImagUnit(std::move(dirs));
}

Multivector ImagUnit::to_multivector() const {
  Multivector m(n());
  for (int j = 0; j < n(); ++j) m[std::size_t{1} << j] = dirs_[static_cast<std::size_t>(j)];
  return m;
}

Paravector::Paravector(double x0, std::vector<double> vec) : x0_(x0), vec_(std::move(vec)) {
  if (static_cast<int>(vec_.size()) > kMaxAlgebraDim) {
    throw DimensionMismatch("paravector with too many components");
  }
}

Paravector Paravector::real(int n, double x0) {
  return Paravector(x0, std::vector<double>(static_cast<std::size_t>(n), 0.0));
}

Paravector Paravector::from_multivector(const Multivector& a, double tol) {
  if (!a.is_paravector(tol)) {
    throw DomainError("\"" + to_string(a) + "\" is not a paravector");
  }
  std::vector<double> vec(static_cast<std::size_t>(a.n()));
  for (int j = 0; j < a.n(); ++j) vec[static_cast<std::size_t>(j)] = a[std::size_t{1} << j];
  return Paravector(a[0], std::move(vec));
}

double Paravector::vec_norm() const {
  double s = 0.0;
  for (double v : vec_) s += v * v;
  return std::sqrt(s);
}

double Paravector::norm2() const {
  double s = x0_ * x0_;
  for (double v : vec_) s += v * v;
  return s;
}

double Paravector::norm() const { return std::sqrt(norm2()); }

Multivector Paravector::to_multivector() const {
  Multivector m(n());
  m[0] = x0_;
  for (int j = 0; j < n(); ++j) m[std::size_t{1} << j] = vec_[static_cast<std::size_t>(j)];
  return m;
}

Paravector& Paravector::operator+=(const Paravector& o) {
  if (o.n() != n()) throw DimensionMismatch("paravector dimensions differ");
  x0_ += o.x0_;
  for (std::size_t j = 0; j < vec_.size(); ++j) vec_[j] += o.vec_[j];
  return *this;
}

Paravector& Paravector::operator-=(const Paravector& o) {
  if (o.n() != n()) throw DimensionMismatch("paravector dimensions differ");
  x0_ -= o.x0_;
  for (std::size_t j = 0; j < vec_.size(); ++j) vec_[j] -= o.vec_[j];
  return *this;
}

Paravector& Paravector::operator*=(double s) {
  x0_ *= s;
  for (double& v : vec_) v *= s;
  return *this;
}

Paravector operator+(Paravector a, const Paravector& b) { return a += b; }
Paravector operator-(Paravector a, const Paravector& b) { return a -= b; }
Paravector operator*(double s, Paravector a) { return a *= s; }

Paravector para_conj(const Paravector& x) {
  std::vector<double> vec(x.vec().begin(), x.vec().end());
  for (double& v : vec) v = -v;
  return Paravector(x.re(), std::move(vec));
}

Paravector para_inv(const Paravector& x) {
  const double n2 = x.norm2();
  if (n2 == 0.0) throw SingularElement("zero paravector has no inverse");
  return (1.0 / n2) * para_conj(x);
}

Paravector plane_embed(double u, double v, const ImagUnit& plane) {
  std::vector<double> vec(plane.dirs().begin(), plane.dirs().end());
  for (double& c : vec) c *= v;
  return Paravector(u, std::move(vec));
}

Paravector plane_embed(const PlanePoint& p) { return plane_embed(p.u, p.v, p.plane); }

ImagUnit plane_of(const Paravector& x) {
  if (x.n() == 0) throw DomainError("R_0 has no imaginary units");
  if (x.is_real()) return ImagUnit::unit(x.n(), 1);
  return ImagUnit(std::vector<double>(x.vec().begin(), x.vec().end()));
}

}  // namespace slicecalc
