#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "ctwist/errors.hpp"

namespace ctwist::fiber {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

// Algebraic identities are checked to this absolute tolerance; geometric
// finite-difference checks use TAU_GEO relative.
inline constexpr double TAU_ALG = 1e-10;
inline constexpr double TAU_GEO = 1e-6;

// Standard symplectic form on R^2n: omega(e_i, e_{j+n}) = delta_ij.
Mat standard_omega(int n);
// J0 e_i = e_{i+n}, J0 e_{i+n} = -e_i (columns are images of basis vectors).
Mat canonical_j(int n);

struct CompatibleJ {
  Mat m;
  int n() const { return static_cast<int>(m.rows()) / 2; }
};

// Invariant checks against a given omega.
bool is_compatible(const Mat& j, const Mat& omega, double tol = TAU_ALG);

struct SiegelPoint {
  Mat x;  // symmetric
  Mat y;  // symmetric positive definite
};

// omega-adjoint A* with omega(A* x, y) = omega(x, A y).
Mat omega_adjoint(const Mat& a, const Mat& omega);
// A = check + hat with check in sp(omega), hat omega-symmetric.
std::pair<Mat, Mat> omega_split(const Mat& a, const Mat& omega);

// Projection of an endomorphism onto the tangent space T_J Z.
Mat tangent_projection(const CompatibleJ& j, const Mat& a, const Mat& omega);

// G_J(A,B) = Trace{x -> g_J(Ax, Bx)} with g_J = omega(., J.).
double fiber_metric(const CompatibleJ& j, const Mat& a, const Mat& b, const Mat& omega);

// G_J-orthonormal basis {V_ij} then {J V_ij} of the vertical space at J,
// 1 <= i <= j <= n (n(n+1) elements in total).
std::vector<Mat> vertical_basis(const CompatibleJ& j, const Mat& omega);

// The unnormalized generator with V e_i = e_{j+n} on the canonical basis.
Mat unnormalized_vij(int n, int i, int j);

Mat principal_sqrt(const Mat& y);  // throws NotSPD

bool is_symplectic(const Mat& psi, int n, double tol = TAU_ALG);

// Moebius action psi . Z = (AZ + B)(CZ + D)^{-1}.
SiegelPoint sp_action(const Mat& psi, const SiegelPoint& z);

// The upper-triangular symplectic matrix with psi . (iI) = Z.
Mat transvection_of(const SiegelPoint& z);

// J(Z) = psi_Z J0 psi_Z^{-1}; passes every CompatibleJ invariant and maps iI
// to J0 exactly. (Relative to the usual row-convention block formula this is
// a global sign flip; the taming condition fixes the choice.)
CompatibleJ j_of_z(const SiegelPoint& z);

// Siegel metric H(W1,W2) = Re Trace(Y^-1 U1 Y^-1 U2 + Y^-1 V1 Y^-1 V2).
double siegel_metric(const SiegelPoint& z, const CMat& w1, const CMat& w2);

struct FiberRng {
  explicit FiberRng(std::uint64_t seed);
  double uniform(double lo, double hi);
  std::uint64_t state;
};

SiegelPoint sample_siegel(int n, FiberRng& rng);
Mat random_symplectic(int n, FiberRng& rng);
CMat random_tangent(int n, FiberRng& rng);

// Deterministic fibre sample; the first element is the canonical J0.
std::vector<CompatibleJ> sample_fiber(int n, int count, std::uint64_t seed);

struct SiegelDiagnostics {
  int n = 0;
  int samples = 0;
  double max_j_squared_error = 0;        // |J(Z)^2 + I|
  double max_compatibility_error = 0;    // |J^T Omega J - Omega| and taming margin
  double min_taming = 0;                 // min omega(z, Jz) over unit z
  double max_tangency_error = 0;         // dJ[W] in T_J Z
  double max_metric_error = 0;           // relative: G(dJ W1, dJ W2) vs 2 H(W1, W2)
  double max_holomorphy_error = 0;       // relative: dJ[iW] vs sign * J dJ[W]
  int holomorphy_sign = 0;               // the recorded global sign
  bool j_at_ii_is_canonical = false;
  bool pass(double tau_alg = TAU_ALG, double tau_geo = TAU_GEO) const {
    return j_at_ii_is_canonical && max_j_squared_error < tau_alg &&
           max_compatibility_error < tau_alg && min_taming > 0 &&
           max_tangency_error < 100 * tau_geo && max_metric_error < tau_geo &&
           max_holomorphy_error < tau_geo;
  }
};

SiegelDiagnostics verify_siegel_model(int n, int samples, std::uint64_t seed);

}  // namespace ctwist::fiber
