#pragma once

// Operators on V_n = R^d (x) R_n. A CliffordMatrix is the blade-indexed
// family of real d x d matrices T_A with T = sum_A T_A e_A, acting by
// T(v) = sum_{A,B} T_A(v_B) e_A e_B.
//
// Coordinates on V_n are blade-major: index = mask * d + component, so the
// real representation is the Kronecker sum rep(T) = sum_A L(e_A) (x) T_A.

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "slicecalc/clifford.hpp"

namespace slicecalc {

using RealRep = Eigen::MatrixXd;

class CliffordMatrix {
 public:
  CliffordMatrix() : CliffordMatrix(0, 1) {}
  CliffordMatrix(int n, int d);
  CliffordMatrix(int n, int d, std::vector<Eigen::MatrixXd> blades);

  static CliffordMatrix identity(int n, int d);
  /// a * I_d.
  static CliffordMatrix scalar(const Multivector& a, int d);

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t blade_count() const { return blades_.size(); }

  const Eigen::MatrixXd& blade(std::size_t mask) const { return blades_[mask]; }
  Eigen::MatrixXd& blade(std::size_t mask) { return blades_[mask]; }

  Multivector entry(int i, int j) const;
  bool is_paravector(double tol = 0.0) const;

  CliffordMatrix& operator+=(const CliffordMatrix& o);
  CliffordMatrix& operator-=(const CliffordMatrix& o);
  CliffordMatrix& operator*=(double s);

 private:
  int n_;
  int d_;
  std::vector<Eigen::MatrixXd> blades_;
};

CliffordMatrix operator+(CliffordMatrix a, const CliffordMatrix& b);
CliffordMatrix operator-(CliffordMatrix a, const CliffordMatrix& b);
CliffordMatrix operator-(CliffordMatrix a);
CliffordMatrix operator*(double s, CliffordMatrix a);

/// Composition S T.
CliffordMatrix operator*(const CliffordMatrix& s, const CliffordMatrix& t);
/// T a: every entry multiplied on the right by the Clifford number a.
CliffordMatrix operator*(const CliffordMatrix& t, const Multivector& a);
/// a T.
CliffordMatrix operator*(const Multivector& a, const CliffordMatrix& t);

CliffordMatrix power(const CliffordMatrix& t, int m);

// T = T_0 + sum_j e_j T_j.
class ParavectorOperator {
 public:
  ParavectorOperator(int n, std::vector<Eigen::MatrixXd> components);

  /// Throws DomainError when t has blades of grade >= 2.
  static ParavectorOperator from_clifford(const CliffordMatrix& t);

  int n() const { return n_; }
  int d() const { return static_cast<int>(components_.front().rows()); }
  /// T_0 ... T_n.
  const std::vector<Eigen::MatrixXd>& components() const { return components_; }

  CliffordMatrix to_clifford() const;
  operator CliffordMatrix() const { return to_clifford(); }  // NOLINT

 private:
  int n_;
  std::vector<Eigen::MatrixXd> components_;
};

class ModuleVector {
 public:
  ModuleVector(int n, int d);
  ModuleVector(int n, int d, std::vector<Eigen::VectorXd> blades);
  static ModuleVector from_coords(int n, int d, const Eigen::VectorXd& coords);

  int n() const { return n_; }
  int d() const { return d_; }
  const Eigen::VectorXd& blade(std::size_t mask) const { return blades_[mask]; }
  Eigen::VectorXd& blade(std::size_t mask) { return blades_[mask]; }

  Eigen::VectorXd coords() const;
  /// sqrt(sum_B |v_B|^2).
  double norm() const;

 private:
  int n_;
  int d_;
  std::vector<Eigen::VectorXd> blades_;
};

RealRep real_rep(const CliffordMatrix& t);

/// Reads a CliffordMatrix back from a matrix that commutes with right
/// multiplication by R_n: T_A is the (A, scalar) block.
CliffordMatrix from_real_rep(const RealRep& rep, int n, int d);

ModuleVector apply(const CliffordMatrix& t, const ModuleVector& v);

/// Throws SingularElement when the smallest singular value of rep(t) is
/// below 1e-12 |rep(t)|_2.
CliffordMatrix invert(const CliffordMatrix& t);

struct OperatorNorms {
  double blade_norm;  // sqrt(sum_A |T_A|_2^2)
  double rep_norm;    // |rep(T)|_2
};

OperatorNorms op_norms(const CliffordMatrix& t);
double rep_norm(const CliffordMatrix& t);

}  // namespace slicecalc
