#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ctwist/curvature.hpp"
#include "ctwist/fiber.hpp"

namespace ctwist::twistor {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Float snapshot of (model, connection, curvature) in adapted-frame
// coordinates, shared by all pointwise twistor evaluations.
struct Context {
  int n = 0;
  int dim = 0;
  Mat omega_d;                  // omega on D, frame coordinates
  Mat sympl;                    // columns: symplectic basis in frame coordinates
  Mat sympl_inv;
  std::vector<Mat> curv;        // R(A_i, A_j) restricted to D, index i*dim+j
  std::vector<double> rd_frame; // omega(R(.,.)., .) over the D-frame, (2n)^4

  static Context make(const ContactModel& model, const ConnectionTable& gamma);

  // R(X,Y) as an endomorphism of D for arbitrary tangent vectors (frame coords).
  Mat r_endo(const Vec& x, const Vec& y) const;
  // Transport of a fibre point from symplectic to frame coordinates.
  Mat transport(const Mat& j_sympl) const;
  double rd(int a, int b, int c, int d) const {
    return rd_frame[((a * 2 * n + b) * 2 * n + c) * 2 * n + d];
  }
};

struct TwistorPoint {
  const Context* ctx = nullptr;
  Mat j;  // compatible complex structure on D, frame coordinates
};

struct TwistorTangent {
  Vec horizontal;  // dim entries, frame coordinates (last = xi component)
  Mat vertical;    // endomorphism of D anticommuting with the anchoring J

  static TwistorTangent horizontal_only(const Vec& x, int two_n);
  static TwistorTangent vertical_only(const Mat& v, int dim);
};

TwistorPoint point_at(const Context& ctx, const Mat& j_frame);

// Validates the vertical part against the anchoring J (throws on mismatch).
TwistorTangent make_tangent(const TwistorPoint& p, const Vec& horizontal, const Mat& vertical);

// Phi_k X^h = (JX)^h, Phi_k V = (-1)^{k+1} J V; Phi_k(xi^h) = 0.
TwistorTangent phi(const TwistorPoint& p, const TwistorTangent& t, int k);

// G_t(X^h, Y^h) = omega(X, JY) + alpha(X) alpha(Y), verticals scaled by t,
// horizontal and vertical orthogonal.
double metric_gt(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2,
                 double t);

// Curvature acting on endomorphisms: [R(X,Y), A], extended by (R A) xi = 0.
Mat endo_curvature(const Context& ctx, const Vec& x, const Vec& y, const Mat& a);

// N^(1)_k(X^h, Y^h)_J = -R(X,Y)J + R(JX,JY)J - (-1)^{k+1} J(R(JX,Y)J + R(X,JY)J).
Mat n1_horizontal(const TwistorPoint& p, const Vec& x, const Vec& y, int k);

// N^(1)_k(X^h, V) = [1 + (-1)^k] (J V X)^h. Vertical inputs are projected to
// T_J Z first; *projected is set when the projection changed the input.
Vec n1_mixed(const TwistorPoint& p, const Vec& x, const Mat& v, int k,
             bool* projected = nullptr);

// Levi form of (E, Phi_k): -omega(X, Y) on horizontal pairs from D, zero on
// mixed and vertical pairs. Throws NotInE when a horizontal part leaves D.
double levi_form(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2);

// d eta_t(X^h, Y^h) = omega(X, Y); zero when a slot is vertical.
double d_eta(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2);

// omega(N^(1)_1(X^h,Y^h) Z, T) for D-vectors equals -16 Im R_D(J^-X,...,J^-T);
// both sides, computed independently, for the property suite.
double n1_dd_scalar(const TwistorPoint& p, const Vec& x, const Vec& y, const Vec& z,
                    const Vec& t);
double rd_j_minus(const TwistorPoint& p, const Vec& x, const Vec& y, const Vec& z,
                  const Vec& t);

struct ScanReport {
  int k = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_dd = 0;     // N1(X^h, Y^h), X,Y in D
  double max_xi = 0;     // N1(X^h, xi^h)
  double max_mixed = 0;  // N1(X^h, V)
  double max_vv = 0;     // N1(V, W), identically zero
  std::array<int, 3> witness_dd{-1, -1, -1};  // (sample, i, j) of max_dd
  std::array<int, 3> witness_xi{-1, -1, -1};
  bool scan_normal = false;         // all maxima below tolerance
  bool scan_cr_integrable = false;  // D x D maximum below tolerance
  bool classify_normal = false;     // verdicts from the exact classification
  bool classify_cr_integrable = false;
  bool agrees = false;
};

ScanReport normality_scan(const ContactModel& model, const ConnectionTable& gamma, int k,
                          int samples, std::uint64_t seed, double tol = fiber::TAU_ALG);

}  // namespace ctwist::twistor
