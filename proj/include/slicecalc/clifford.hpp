#pragma once

// Real Clifford algebra R_n with e_i e_j + e_j e_i = -2 delta_ij, dense
// blade storage indexed by bitmask (bit i-1 set <=> e_i present).

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicecalc/errors.hpp"

namespace slicecalc {

inline constexpr int kMaxAlgebraDim = 8;

struct BladeIndex {
  std::uint32_t mask = 0;
  auto operator<=>(const BladeIndex&) const = default;
};

struct BladeProduct {
  int sign;
  BladeIndex blade;
};

/// e_a e_b = sign * e_{a xor b}.
BladeProduct blade_product(BladeIndex a, BladeIndex b);

int grade(BladeIndex b);

/// "e12", "e3", "" for the scalar blade.
std::string blade_name(BladeIndex b);

// Products e_a e_b for all pairs, computed once per algebra dimension.
class SignTable {
 public:
  explicit SignTable(int n);
  int n() const { return n_; }
  std::size_t dim() const { return dim_; }
  int sign(std::size_t a, std::size_t b) const {
    return signs_[a * dim_ + b];
  }

 private:
  int n_;
  std::size_t dim_;
  std::vector<signed char> signs_;
};

const SignTable& sign_table(int n);

class Multivector {
 public:
  Multivector() : Multivector(0) {}
  explicit Multivector(int n);

  static Multivector scalar(int n, double value);
  static Multivector unit(int n, int i);
  static Multivector blade(int n, BladeIndex b, double value = 1.0);

  int n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  double operator[](std::size_t mask) const { return coeffs_[mask]; }
  double& operator[](std::size_t mask) { return coeffs_[mask]; }
  std::span<const double> coeffs() const { return coeffs_; }

  double scalar_part() const { return coeffs_[0]; }
  /// Euclidean norm of the coefficient vector.
  double norm() const;
  bool is_zero() const;
  bool is_scalar(double tol = 0.0) const;
  bool is_paravector(double tol = 0.0) const;

  /// Embeds into R_m, m >= n (same masks, same products).
  Multivector promote(int m) const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);
  Multivector& operator/=(double s);

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  int n_;
  std::vector<double> coeffs_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(double s, Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator/(Multivector a, double s);

/// Geometric (Clifford) product.
Multivector mv_mul(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);

/// Left multiplication x -> a x as a 2^n x 2^n real matrix in blade order.
Eigen::MatrixXd left_regular(const Multivector& a);

/// Two-sided inverse through the left regular representation. Throws
/// SingularElement when a pivot falls below 1e-12 * |a|.
Multivector mv_inverse(const Multivector& a);

/// "1.5 + 2 e1 - 0.25 e12"; shortest round-trip decimal for coefficients.
std::string to_string(const Multivector& a);

/// Inverse of to_string. Coefficient and blade must be separated by
/// whitespace or '*' ("2e1" is the number 20). Non-canonical blades such as
/// "e21" are reduced with the product rule.
Multivector parse_multivector(std::string_view text, int n);

// ---------------------------------------------------------------------------
// Paravectors and slice planes.

class ImagUnit {
 public:
  ImagUnit() = default;
  /// Normalizes dirs; throws DomainError for a zero vector.
  explicit ImagUnit(std::vector<double> dirs);
  static ImagUnit unit(int n, int i);

  int n() const { return static_cast<int>(dirs_.size()); }
  std::span<const double> dirs() const { return dirs_; }
  Multivector to_multivector() const;

  friend bool operator==(const ImagUnit&, const ImagUnit&) = default;

 private:
  std::vector<double> dirs_;
};

class Paravector {
 public:
  Paravector() = default;
  Paravector(double x0, std::vector<double> vec);
  static Paravector real(int n, double x0);
  /// Throws DomainError if a has components outside grades 0 and 1.
  static Paravector from_multivector(const Multivector& a, double tol = 0.0);

  int n() const { return static_cast<int>(vec_.size()); }
  double re() const { return x0_; }
  std::span<const double> vec() const { return vec_; }
  double vec_norm() const;
  double norm2() const;
  double norm() const;
  bool is_real() const { return vec_norm() == 0.0; }

  Multivector to_multivector() const;

  Paravector& operator+=(const Paravector& o);
  Paravector& operator-=(const Paravector& o);
  Paravector& operator*=(double s);

  friend bool operator==(const Paravector&, const Paravector&) = default;

 private:
  double x0_ = 0.0;
  std::vector<double> vec_;
};

Paravector operator+(Paravector a, const Paravector& b);
Paravector operator-(Paravector a, const Paravector& b);
Paravector operator*(double s, Paravector a);

Paravector para_conj(const Paravector& x);
/// x^{-1} = conj(x) / |x|^2.
Paravector para_inv(const Paravector& x);

struct PlanePoint {
  double u = 0.0;
  double v = 0.0;
  ImagUnit plane;
};

Paravector plane_embed(const PlanePoint& p);
Paravector plane_embed(double u, double v, const ImagUnit& plane);

/// vec(x)/|vec(x)|; e1 for real x.
ImagUnit plane_of(const Paravector& x);

}  // namespace slicecalc
