#include "ctwist/fiber.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace ctwist::fiber {

Mat standard_omega(int n) {
  Mat o = Mat::Zero(2 * n, 2 * n);
  o.topRightCorner(n, n) = Mat::Identity(n, n);
  o.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return o;
}

Mat canonical_j(int n) {
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Mat::Identity(n, n);
  j.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  return j;
}

bool is_compatible(const Mat& j, const Mat& omega, double tol) {
  const int m = static_cast<int>(j.rows());
  if ((j * j + Mat::Identity(m, m)).cwiseAbs().maxCoeff() > tol) return false;
  if ((j.transpose() * omega * j - omega).cwiseAbs().maxCoeff() > tol) return false;
  const Mat g = omega * j;
  const Mat gs = (g + g.transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> es(gs);
  return es.eigenvalues().minCoeff() > 0;
}

Mat omega_adjoint(const Mat& a, const Mat& omega) {
  Eigen::FullPivLU<Mat> lu(omega);
  if (!lu.isInvertible()) throw Error(Errc::Degenerate, "omega not invertible");
  return lu.solve(a.transpose() * omega);
}

std::pair<Mat, Mat> omega_split(const Mat& a, const Mat& omega) {
  const Mat adj = omega_adjoint(a, omega);
  return {(a - adj) / 2, (a + adj) / 2};
}

Mat tangent_projection(const CompatibleJ& j, const Mat& a, const Mat& omega) {
  const Mat check = omega_split(a, omega).first;
  return (check + j.m * check * j.m) / 2;
}

double fiber_metric(const CompatibleJ& j, const Mat& a, const Mat& b, const Mat& omega) {
  const Mat g = omega * j.m;
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw Error(Errc::Degenerate, "metric not invertible");
  return (lu.solve(a.transpose() * g * b)).trace();
}

namespace {

Mat lab(int m, int alpha, int beta) {
  // L_{alpha beta} e_alpha = e_beta (zero elsewhere).
  Mat l = Mat::Zero(m, m);
  l(beta, alpha) = 1;
  return l;
}

// g_J-orthonormal basis e_1..e_n, e_{i+n} = J e_i, as matrix columns.
Mat adapted_basis(const CompatibleJ& j, const Mat& omega) {
  const int m = static_cast<int>(j.m.rows());
  const int n = m / 2;
  const Mat g = ((omega * j.m) + (omega * j.m).transpose()) / 2;
  std::vector<Eigen::VectorXd> chosen;
  Mat e = Mat::Zero(m, m);
  auto gdot = [&g](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return x.dot(g * y);
  };
  for (int i = 0; i < n; ++i) {
    // Best remaining candidate after g-orthogonal projection.
    Eigen::VectorXd best;
    double best_norm = -1;
    for (int c = 0; c < m; ++c) {
      Eigen::VectorXd v = Eigen::VectorXd::Unit(m, c);
      for (const auto& u : chosen) v -= gdot(u, v) * u;
      const double nv = gdot(v, v);
      if (nv > best_norm) {
        best_norm = nv;
        best = v;
      }
    }
    if (best_norm <= 0) throw Error(Errc::Degenerate, "metric degenerate");
    best /= std::sqrt(best_norm);
    Eigen::VectorXd jb = j.m * best;
    e.col(i) = best;
    e.col(i + n) = jb;
    chosen.push_back(best);
    chosen.push_back(jb);
  }
  return e;
}

}  // namespace

std::vector<Mat> vertical_basis(const CompatibleJ& j, const Mat& omega) {
  const int m = static_cast<int>(j.m.rows());
  const int n = m / 2;
  const Mat e = adapted_basis(j, omega);
  Eigen::PartialPivLU<Mat> elu(e);
  std::vector<Mat> vs;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int jj = i; jj < n; ++jj) {
      Mat v;
      if (i == jj) {
        v = inv_sqrt2 * (lab(m, i + n, i) + lab(m, i, i + n));
      } else {
        v = 0.5 * (lab(m, i + n, jj) + lab(m, jj + n, i) + lab(m, i, jj + n) +
                   lab(m, jj, i + n));
      }
      vs.push_back(e * v * elu.inverse());
    }
  const std::size_t half = vs.size();
  for (std::size_t idx = 0; idx < half; ++idx) vs.push_back(j.m * vs[idx]);
  return vs;
}

Mat unnormalized_vij(int n, int i, int j) {
  const int m = 2 * n;
  if (i == j) return lab(m, i + n, i) + lab(m, i, i + n);
  return lab(m, i + n, j) + lab(m, j + n, i) + lab(m, i, j + n) + lab(m, j, i + n);
}

Mat principal_sqrt(const Mat& y) {
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1 + y.cwiseAbs().maxCoeff()))
    throw Error(Errc::NotSPD, "matrix not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat> es((y + y.transpose()) / 2);
  const auto& vals = es.eigenvalues();
  if (vals.minCoeff() <= 0) throw Error(Errc::NotSPD, "non-positive eigenvalue");
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

bool is_symplectic(const Mat& psi, int n, double tol) {
  const Mat omega = standard_omega(n);
  return (psi.transpose() * omega * psi - omega).cwiseAbs().maxCoeff() <= tol;
}

SiegelPoint sp_action(const Mat& psi, const SiegelPoint& z) {
  const int n = static_cast<int>(z.x.rows());
  if (!is_symplectic(psi, n)) throw Error(Errc::NotSymplectic, "psi fails the block test");
  const CMat zc = z.x.cast<std::complex<double>>() +
                  std::complex<double>(0, 1) * z.y.cast<std::complex<double>>();
  const CMat a = psi.topLeftCorner(n, n).cast<std::complex<double>>();
  const CMat b = psi.topRightCorner(n, n).cast<std::complex<double>>();
  const CMat c = psi.bottomLeftCorner(n, n).cast<std::complex<double>>();
  const CMat d = psi.bottomRightCorner(n, n).cast<std::complex<double>>();
  const CMat den = c * zc + d;
  Eigen::FullPivLU<CMat> lu(den);
  if (!lu.isInvertible())
    throw Error(Errc::SingularDenominator, "CZ + D singular (should not happen)");
  const CMat w = (a * zc + b) * lu.inverse();
  SiegelPoint out;
  out.x = (w.real() + w.real().transpose()) / 2;
  out.y = (w.imag() + w.imag().transpose()) / 2;
  Eigen::SelfAdjointEigenSolver<Mat> es(out.y);
  if (es.eigenvalues().minCoeff() <= 0)
    throw Error(Errc::NotSPD, "action left the upper half-space (should not happen)");
  return out;
}

Mat transvection_of(const SiegelPoint& z) {
  const int n = static_cast<int>(z.x.rows());
  if (z.x.isZero(0.0) && z.y.isIdentity(0.0)) return Mat::Identity(2 * n, 2 * n);
  const Mat ys = principal_sqrt(z.y);
  Eigen::PartialPivLU<Mat> lu(ys);
  const Mat ysinv = lu.inverse();
  Mat psi = Mat::Zero(2 * n, 2 * n);
  psi.topLeftCorner(n, n) = ys;
  psi.topRightCorner(n, n) = z.x * ysinv;
  psi.bottomRightCorner(n, n) = ysinv;
  return psi;
}

CompatibleJ j_of_z(const SiegelPoint& z) {
  const int n = static_cast<int>(z.x.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es((z.y + z.y.transpose()) / 2);
  if (es.eigenvalues().minCoeff() <= 0) throw Error(Errc::NotSPD, "imaginary part not SPD");
  const Mat psi = transvection_of(z);
  if (psi.isIdentity(0.0)) return {canonical_j(n)};
  return {psi * canonical_j(n) * psi.inverse()};
}

double siegel_metric(const SiegelPoint& z, const CMat& w1, const CMat& w2) {
  Eigen::FullPivLU<Mat> lu(z.y);
  if (!lu.isInvertible()) throw Error(Errc::NotSPD, "imaginary part singular");
  const Mat yinv = lu.inverse();
  const Mat u1 = w1.real(), v1 = w1.imag();
  const Mat u2 = w2.real(), v2 = w2.imag();
  return (yinv * u1 * yinv * u2 + yinv * v1 * yinv * v2).trace();
}

FiberRng::FiberRng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ull) {}

double FiberRng::uniform(double lo, double hi) {
  // splitmix64
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  const double u = static_cast<double>(z >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

SiegelPoint sample_siegel(int n, FiberRng& rng) {
  Mat x(n, n), m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x(i, j) = rng.uniform(-1, 1);
      m(i, j) = rng.uniform(-1, 1);
    }
  SiegelPoint z;
  z.x = (x + x.transpose()) / 2;
  z.y = m.transpose() * m + 0.1 * Mat::Identity(n, n);
  return z;
}

Mat random_symplectic(int n, FiberRng& rng) {
  Mat h(2 * n, 2 * n);
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) h(i, j) = rng.uniform(-0.5, 0.5);
  const Mat hs = (h + h.transpose()) / 2;
  const Mat s = standard_omega(n) * hs;  // Hamiltonian, so exp(s) is symplectic
  return s.exp();
}

CMat random_tangent(int n, FiberRng& rng) {
  Mat u(n, n), v(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      u(i, j) = rng.uniform(-1, 1);
      v(i, j) = rng.uniform(-1, 1);
    }
  return ((u + u.transpose()) / 2).cast<std::complex<double>>() +
         std::complex<double>(0, 1) * ((v + v.transpose()) / 2).cast<std::complex<double>>();
}

std::vector<CompatibleJ> sample_fiber(int n, int count, std::uint64_t seed) {
  std::vector<CompatibleJ> out;
  if (count <= 0) return out;
  out.push_back({canonical_j(n)});
  FiberRng rng(seed);
  while (static_cast<int>(out.size()) < count) out.push_back(j_of_z(sample_siegel(n, rng)));
  return out;
}

SiegelDiagnostics verify_siegel_model(int n, int samples, std::uint64_t seed) {
  SiegelDiagnostics diag;
  diag.n = n;
  diag.samples = samples;
  const Mat omega = standard_omega(n);
  const Mat j0 = canonical_j(n);
  const Mat id = Mat::Identity(2 * n, 2 * n);

  SiegelPoint ii;
  ii.x = Mat::Zero(n, n);
  ii.y = Mat::Identity(n, n);
  diag.j_at_ii_is_canonical = (j_of_z(ii).m - j0).cwiseAbs().maxCoeff() == 0.0;

  diag.min_taming = 1e300;
  FiberRng rng(seed);
  const double h = 1e-5;
  auto dj = [&](const SiegelPoint& z, const CMat& w) {
    SiegelPoint zp{z.x + h * w.real(), z.y + h * w.imag()};
    SiegelPoint zm{z.x - h * w.real(), z.y - h * w.imag()};
    return ((j_of_z(zp).m - j_of_z(zm).m) / (2 * h)).eval();
  };

  for (int s = 0; s < samples; ++s) {
    const SiegelPoint z = sample_siegel(n, rng);
    const CompatibleJ j = j_of_z(z);
    diag.max_j_squared_error =
        std::max(diag.max_j_squared_error, (j.m * j.m + id).cwiseAbs().maxCoeff());
    diag.max_compatibility_error = std::max(
        diag.max_compatibility_error,
        (j.m.transpose() * omega * j.m - omega).cwiseAbs().maxCoeff());
    const Mat g = omega * j.m;
    Eigen::SelfAdjointEigenSolver<Mat> es((g + g.transpose()) / 2);
    diag.min_taming = std::min(diag.min_taming, es.eigenvalues().minCoeff());

    const CMat w1 = random_tangent(n, rng);
    const CMat w2 = random_tangent(n, rng);
    const Mat d1 = dj(z, w1);
    const Mat d2 = dj(z, w2);

    // (a) tangency of the pushforward: anticommutation with J, and Omega*dJ
    // symmetric (the sp(omega) condition).
    const double scale1 = std::max(1.0, d1.cwiseAbs().maxCoeff());
    const double anti = (d1 * j.m + j.m * d1).cwiseAbs().maxCoeff();
    const Mat od = omega * d1;
    const double skew = (od - od.transpose()).cwiseAbs().maxCoeff();
    diag.max_tangency_error =
        std::max(diag.max_tangency_error, std::max(anti, skew) / scale1);

    // (b) the diffeomorphism is isometric onto 2H.
    const double lhs = fiber_metric(j, d1, d2, omega);
    const double rhs = 2 * siegel_metric(z, w1, w2);
    diag.max_metric_error = std::max(
        diag.max_metric_error, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

    // (c) holomorphy up to the global sign fixed by the column convention.
    const CMat iw1 = std::complex<double>(0, 1) * w1;
    const Mat di = dj(z, iw1);
    const Mat jd = j.m * d1;
    if (diag.holomorphy_sign == 0)
      diag.holomorphy_sign = ((di.cwiseProduct(jd)).sum() >= 0) ? 1 : -1;
    const double hol =
        (di - diag.holomorphy_sign * jd).cwiseAbs().maxCoeff() / scale1;
    diag.max_holomorphy_error = std::max(diag.max_holomorphy_error, hol);
  }
  return diag;
}

}  // namespace ctwist::fiber
