#pragma once

// S-spectrum and S-resolvent of operators on V_n.
//
// A spectral component (u, r) stands for the sphere {Re s = u, |vec s| = r}
// (a real point when r = 0). The pencil T^2 - 2uT + (u^2 + r^2)I depends on
// s only through (u, r), and its representation is q(rep T) with
// q(x) = x^2 - 2ux + u^2 + r^2, so it is singular exactly when u +- ir is an
// eigenvalue of rep T.

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "slicecalc/clifford_matrix.hpp"

namespace slicecalc {

struct SpectrumComponent {
  double u = 0.0;
  double r = 0.0;
  int multiplicity = 1;
};

enum class SpectrumMethod { exact, scan };

std::string to_string(SpectrumMethod m);

struct SpectrumReport {
  std::vector<SpectrumComponent> components;
  SpectrumMethod method = SpectrumMethod::exact;
  double cluster_tol = 0.0;
  double scan_step = 0.0;
  double scan_tol = 0.0;
  OperatorNorms norms{0.0, 0.0};
};

inline constexpr double kClusterTol = 1e-8;
inline constexpr double kScanTol = 1e-8;

CliffordMatrix pencil(const CliffordMatrix& t, double u, double r);

SpectrumReport s_spectrum_exact(const CliffordMatrix& t, double cluster_tol = kClusterTol);

struct ScanOptions {
  double u_min = 0.0;
  double u_max = 0.0;
  double r_max = 0.0;
  double step = 0.0;
  double tol = kScanTol;
};

/// Step rep_norm/100 (or `step` when positive) and ranges covering the
/// rep_norm ball plus one step.
ScanOptions default_scan_options(const CliffordMatrix& t, double step = 0.0,
                                 double tol = kScanTol);

/// Grid scan of h(u, r) = sigma_min(rep T - (u + ir)I). Grid points with
/// h <= step/sqrt(2) are refined to zeros of h; a refined point is kept when
/// sigma_min(rep pencil) <= tol (|T|^2 + 2|u||T| + u^2 + r^2), and points closer than one step
/// are merged.
SpectrumReport s_spectrum_scan(const CliffordMatrix& t, const ScanOptions& opt);

/// Hausdorff distance between the (u, r) point sets.
double hausdorff_distance(const SpectrumReport& a, const SpectrumReport& b);

/// Distance from (u, r) to the nearest component.
double spectral_distance(const SpectrumReport& spec, double u, double r);

/// Orthonormal basis of the numerical null space of rep(pencil), as module
/// vectors. Singular values below tol (|T|^2 + 2|u||T| + u^2 + r^2) count
/// as zero.
std::vector<ModuleVector> pencil_null_vectors(const CliffordMatrix& t, double u, double r,
                                              double tol = 1e-8);

/// -pencil^{-1} (T - conj(s) I). Throws SpectrumHit(u, r) on the spectrum.
CliffordMatrix s_resolvent(const Paravector& s, const CliffordMatrix& t);

enum class SeriesStatus { guaranteed, unverified, divergent };

std::string to_string(SeriesStatus s);

struct SeriesResolvent {
  CliffordMatrix value;
  SeriesStatus status = SeriesStatus::guaranteed;
  /// rep_norm(T) / |s|, the geometric rate.
  double ratio = 0.0;
};

/// sum_{m=0}^{terms} T^m s^{-1-m}. The status records whether rep_norm
/// (guaranteed) or only blade_norm (unverified) is below |s|.
SeriesResolvent s_resolvent_series(const Paravector& s, const CliffordMatrix& t, int terms);

/// |S^{-1}(s,T) s - T S^{-1}(s,T) - I| in the representation norm.
double resolvent_equation_residual(const Paravector& s, const CliffordMatrix& t);

/// |vec s| |(Re s I - T)^{-1}|; the expansion needs this below 1.
double left_expansion_ratio(const Paravector& s, const CliffordMatrix& t);

/// sum_{m=0}^{terms} (Re s I - T)^{-m-1} (Re s - s)^m.
CliffordMatrix left_resolvent_expansion(const Paravector& s, const CliffordMatrix& t,
                                        int terms);

/// Joint real spectrum of commuting real matrices: points lambda where
/// sum_j (lambda_j I - T_j)^2 is singular. step <= 0 picks span/40.
std::vector<std::vector<double>> commuting_gamma_spectrum(const std::vector<Eigen::MatrixXd>& ts,
                                                          double step = 0.0,
                                                          double tol = kScanTol);

}  // namespace slicecalc
