#include "ctwist/solver.hpp"

#include "ctwist/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace ctwist::solver {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct FloatTable {
  int dim = 0;
  std::vector<double> g;
  double at(int i, int j, int k) const { return g[(i * dim + j) * dim + k]; }
  double& at(int i, int j, int k) { return g[(i * dim + j) * dim + k]; }
};

struct FloatCurv {
  int dim = 0;
  std::vector<double> r;
  double at(int i, int j, int k, int l) const {
    return r[((i * dim + j) * dim + k) * dim + l];
  }
  double& at(int i, int j, int k, int l) { return r[((i * dim + j) * dim + k) * dim + l]; }
};

// Everything sigma-independent, precomputed once per solve.
struct Workspace {
  const ContactModel* model = nullptr;
  int n = 0, dim = 0, two_n = 0;
  FloatTable base;
  std::vector<double> cf;          // frame structure constants
  std::vector<FloatTable> basis_dirs;  // d Gamma / d sigma_p
  MatrixXd sympl;                  // symplectic basis, frame coords
  Objective objective;

  double cf_at(int i, int j, int k) const { return cf[(i * dim + j) * dim + k]; }
};

Workspace make_workspace(const ContactModel& model, const ConnectionTable& base,
                         const Objective& objective) {
  Workspace w;
  w.model = &model;
  w.n = static_cast<int>(model.n);
  w.dim = static_cast<int>(model.dim());
  w.two_n = 2 * w.n;
  w.objective = objective;
  w.base.dim = w.dim;
  w.base.g.resize(w.dim * w.dim * w.dim);
  for (std::size_t i = 0; i < base.gamma.size(); ++i) w.base.g[i] = to_double(base.gamma[i]);
  w.cf.resize(w.dim * w.dim * w.dim);
  for (int i = 0; i < w.dim; ++i)
    for (int j = 0; j < w.dim; ++j)
      for (int k = 0; k < w.dim; ++k)
        w.cf[(i * w.dim + j) * w.dim + k] = to_double(model.cf(i, j, k));

  const auto sb = symplectic_basis(model.omega);
  w.sympl.resize(w.two_n, w.two_n);
  for (int i = 0; i < w.two_n; ++i)
    for (int j = 0; j < w.two_n; ++j) w.sympl(i, j) = to_double(sb.basis[i][j]);

  // Parameter directions: for multiset p, the deformation with
  // omega(S(A_i,A_j),A_k) = 1 on its arrangements and 0 elsewhere.
  const auto multisets = sym3_index(w.two_n);
  MatrixXd omega(w.two_n, w.two_n);
  for (int i = 0; i < w.two_n; ++i)
    for (int j = 0; j < w.two_n; ++j) omega(i, j) = to_double(model.omega[i][j]);
  const MatrixXd omega_t_inv = omega.transpose().inverse();
  for (const auto& ms : multisets) {
    FloatTable dir;
    dir.dim = w.dim;
    dir.g.assign(w.dim * w.dim * w.dim, 0.0);
    for (int i = 0; i < w.two_n; ++i)
      for (int j = 0; j < w.two_n; ++j) {
        VectorXd rhs = VectorXd::Zero(w.two_n);
        bool any = false;
        for (int k = 0; k < w.two_n; ++k) {
          std::array<std::size_t, 3> idx{static_cast<std::size_t>(i),
                                         static_cast<std::size_t>(j),
                                         static_cast<std::size_t>(k)};
          std::sort(idx.begin(), idx.end());
          if (idx == ms) {
            rhs(k) = 1.0;
            any = true;
          }
        }
        if (!any) continue;
        const VectorXd v = omega_t_inv * rhs;
        for (int k = 0; k < w.two_n; ++k) dir.at(i, j, k) = v(k);
      }
    w.basis_dirs.push_back(std::move(dir));
  }
  return w;
}

FloatTable table_of(const Workspace& w, const VectorXd& sigma) {
  FloatTable t = w.base;
  for (int p = 0; p < sigma.size(); ++p) {
    if (sigma(p) == 0) continue;
    for (std::size_t idx = 0; idx < t.g.size(); ++idx)
      t.g[idx] += sigma(p) * w.basis_dirs[p].g[idx];
  }
  return t;
}

FloatCurv curvature_of(const Workspace& w, const FloatTable& t) {
  const int d = w.dim;
  FloatCurv r;
  r.dim = d;
  r.r.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0;
          for (int m = 0; m < d; ++m) {
            const double c = w.cf_at(i, j, m);
            if (c != 0) v += c * t.at(m, k, l);
            v += -t.at(j, k, m) * t.at(i, m, l) + t.at(i, k, m) * t.at(j, m, l);
          }
          r.at(i, j, k, l) = v;
          r.at(j, i, k, l) = -v;
        }
  return r;
}

// Derivative of the curvature in direction e at the point t.
FloatCurv curvature_dir(const Workspace& w, const FloatTable& t, const FloatTable& e) {
  const int d = w.dim;
  FloatCurv r;
  r.dim = d;
  r.r.assign(static_cast<std::size_t>(d) * d * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = 0;
          for (int m = 0; m < d; ++m) {
            const double c = w.cf_at(i, j, m);
            if (c != 0) v += c * e.at(m, k, l);
            v += -e.at(j, k, m) * t.at(i, m, l) - t.at(j, k, m) * e.at(i, m, l) +
                 e.at(i, k, m) * t.at(j, m, l) + t.at(i, k, m) * e.at(j, m, l);
          }
          r.at(i, j, k, l) = v;
          r.at(j, i, k, l) = -v;
        }
  return r;
}

// Residual blocks; each is a LINEAR function of the curvature tensor, so the
// Jacobian columns reuse it on directional curvature derivatives.
void append_flat_block(const Workspace& w, const FloatCurv& r, std::vector<double>& out) {
  for (int i = 0; i < w.dim; ++i)
    for (int j = i + 1; j < w.dim; ++j)
      for (int k = 0; k < w.two_n; ++k)
        for (int l = 0; l < w.two_n; ++l) out.push_back(r.at(i, j, k, l));
}

void append_reeb_block(const Workspace& w, const FloatCurv& r, double weight,
                       std::vector<double>& out) {
  const int xi = w.two_n;
  for (int i = 0; i < w.two_n; ++i)
    for (int k = 0; k < w.two_n; ++k)
      for (int l = 0; l < w.two_n; ++l) out.push_back(weight * r.at(i, xi, k, l));
}

void append_ricci_block(const Workspace& w, const FloatCurv& r, double weight,
                        std::vector<double>& out) {
  const int m = w.two_n;
  const int nn = w.n;
  // R_D over the symplectic basis.
  std::vector<double> rd(static_cast<std::size_t>(m) * m * m * m, 0.0);
  auto rd_at = [m, &rd](int a, int b, int c, int e) -> double& {
    return rd[((a * m + b) * m + c) * m + e];
  };
  MatrixXd omega(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) omega(i, j) = to_double(w.model->omega[i][j]);
  // omega(R(e_a,e_b)e_c, e_e): contract through the frame representation.
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int e = 0; e < m; ++e) {
          double v = 0;
          for (int i = 0; i < m; ++i) {
            const double ea = w.sympl(i, a);
            if (ea == 0) continue;
            for (int j = 0; j < m; ++j) {
              const double eb = w.sympl(j, b);
              if (eb == 0) continue;
              for (int k = 0; k < m; ++k) {
                const double ec = w.sympl(k, c);
                if (ec == 0) continue;
                for (int l = 0; l < m; ++l) {
                  double ol = 0;
                  for (int lp = 0; lp < m; ++lp) ol += omega(l, lp) * w.sympl(lp, e);
                  if (ol != 0) v += ea * eb * ec * ol * r.at(i, j, k, l);
                }
              }
            }
          }
          rd_at(a, b, c, e) = v;
        }
  // Ricci tensor in the symplectic basis.
  MatrixXd sigma = MatrixXd::Zero(m, m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      double v = 0;
      for (int i = 0; i < nn; ++i)
        v += rd_at(x, i, y, i + nn) - rd_at(x, i + nn, y, i);
      sigma(x, y) = v;
    }
  // Residual against the reducible part, standard omega, independent slots.
  const double factor = 1.0 / (m + 2);
  auto std_omega = [nn](int a, int b) -> double {
    if (a < nn && b == a + nn) return 1;
    if (b < nn && a == b + nn) return -1;
    return 0;
  };
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int e = c; e < m; ++e) {
          const double proj =
              factor * (-std_omega(a, c) * sigma(b, e) + std_omega(b, e) * sigma(a, c) -
                        std_omega(a, e) * sigma(b, c) + std_omega(b, c) * sigma(a, e) -
                        2 * std_omega(a, b) * sigma(c, e));
          out.push_back(weight * (rd_at(a, b, c, e) - proj));
        }
}

std::vector<double> blocks_of(const Workspace& w, const FloatCurv& r) {
  std::vector<double> out;
  switch (w.objective.kind) {
    case ObjectiveKind::Flat:
      append_flat_block(w, r, out);
      break;
    case ObjectiveKind::RicciType:
      append_ricci_block(w, r, w.objective.weight_ricci, out);
      break;
    case ObjectiveKind::ReebFlat:
      append_reeb_block(w, r, w.objective.weight_reeb, out);
      break;
    case ObjectiveKind::Normal:
      append_ricci_block(w, r, w.objective.weight_ricci, out);
      append_reeb_block(w, r, w.objective.weight_reeb, out);
      break;
  }
  return out;
}

VectorXd residual_ws(const Workspace& w, const VectorXd& sigma) {
  const FloatTable t = table_of(w, sigma);
  const auto vals = blocks_of(w, curvature_of(w, t));
  return Eigen::Map<const VectorXd>(vals.data(), vals.size());
}

MatrixXd jacobian_ws(const Workspace& w, const VectorXd& sigma) {
  const FloatTable t = table_of(w, sigma);
  const int p = static_cast<int>(w.basis_dirs.size());
  MatrixXd jac;
  for (int c = 0; c < p; ++c) {
    const auto col = blocks_of(w, curvature_dir(w, t, w.basis_dirs[c]));
    if (jac.size() == 0) jac.resize(static_cast<int>(col.size()), p);
    jac.col(c) = Eigen::Map<const VectorXd>(col.data(), col.size());
  }
  return jac;
}

struct LmOutcome {
  VectorXd sigma;
  double sup_norm = 0;
  int iterations = 0;
};

double sup_norm_of(const VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Masked damped least squares: only `active` columns move.
LmOutcome lm_minimize(const Workspace& w, VectorXd sigma, const SolverOptions& opt,
                      const std::vector<bool>& active) {
  VectorXd r = residual_ws(w, sigma);
  double lambda = opt.damping_init;
  double best2 = r.squaredNorm();
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (sup_norm_of(r) < opt.tolerance) break;
    const MatrixXd jac = jacobian_ws(w, sigma);
    std::vector<int> cols;
    for (int c = 0; c < jac.cols(); ++c)
      if (active[c]) cols.push_back(c);
    MatrixXd ja(jac.rows(), static_cast<int>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) ja.col(c) = jac.col(cols[c]);
    const MatrixXd jtj = ja.transpose() * ja;
    const VectorXd jtr = ja.transpose() * r;
    bool stepped = false;
    for (int tries = 0; tries < 25; ++tries) {
      MatrixXd m = jtj;
      m.diagonal().array() += lambda;
      const VectorXd delta = m.ldlt().solve(-jtr);
      VectorXd cand = sigma;
      for (std::size_t c = 0; c < cols.size(); ++c) cand(cols[c]) += delta(c);
      const VectorXd rc = residual_ws(w, cand);
      if (rc.squaredNorm() < best2) {
        sigma = cand;
        r = rc;
        best2 = rc.squaredNorm();
        lambda = std::max(lambda * 0.1, 1e-14);
        stepped = true;
        break;
      }
      lambda *= 10;
      if (lambda > 1e15) break;
    }
    if (!stepped) break;
  }
  return {sigma, sup_norm_of(r), it};
}

std::optional<SymmetricCoefficients> round_and_verify(const Workspace& w,
                                                      const ConnectionTable& base,
                                                      const VectorXd& sigma,
                                                      long max_den) {
  const auto multisets = sym3_index(w.two_n);
  SymmetricCoefficients coeff = SymmetricCoefficients::zero(w.two_n);
  for (std::size_t p = 0; p < multisets.size(); ++p) {
    const auto q = rationalize(sigma(static_cast<int>(p)), max_den);
    if (!q) return std::nullopt;
    coeff.set(multisets[p][0], multisets[p][1], multisets[p][2], *q);
  }
  const DeformationTensor s = deformation_from_coefficients(*w.model, coeff);
  if (!exact_objective_met(*w.model, base, s, w.objective)) return std::nullopt;
  return coeff;
}

}  // namespace

VectorXd residual(const ContactModel& model, const ConnectionTable& gamma_base,
                  const VectorXd& sigma, const Objective& objective) {
  const Workspace w = make_workspace(model, gamma_base, objective);
  return residual_ws(w, sigma);
}

MatrixXd jacobian(const ContactModel& model, const ConnectionTable& gamma_base,
                  const VectorXd& sigma, const Objective& objective) {
  const Workspace w = make_workspace(model, gamma_base, objective);
  return jacobian_ws(w, sigma);
}

bool exact_objective_met(const ContactModel& model, const ConnectionTable& gamma_base,
                         const DeformationTensor& s, const Objective& objective) {
  const ConnectionTable t = deform(model, gamma_base, s);
  const CurvatureTensor r = curvature(model, t);
  switch (objective.kind) {
    case ObjectiveKind::Flat:
      return r.is_zero();
    case ObjectiveKind::RicciType:
      return is_ricci_type(rd_tensor_frame(model, r)).ricci_type;
    case ObjectiveKind::ReebFlat:
      return reeb_curvature(model, r).zero;
    case ObjectiveKind::Normal:
      return reeb_curvature(model, r).zero &&
             is_ricci_type(rd_tensor_frame(model, r)).ricci_type;
  }
  return false;
}

std::optional<Rational> rationalize(double value, long max_denominator) {
  if (!std::isfinite(value)) return std::nullopt;
  // Continued fractions with a denominator bound.
  const double sign = value < 0 ? -1.0 : 1.0;
  double x = std::abs(value);
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(x);
    if (fl > 9e17) return std::nullopt;
    const long long a = static_cast<long long>(fl);
    const long long p2 = a * p1 + p0;
    const long long q2 = a * q1 + q0;
    if (q2 > max_denominator) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    const double frac = x - fl;
    if (frac < 1e-15) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return std::nullopt;
  Rational r = Rational(BigInt(p1), BigInt(q1));
  if (sign < 0) r = -r;
  return r;
}

Solution solve(const ContactModel& model, const ConnectionTable& gamma_base,
               const Objective& objective, const SolverOptions& options) {
  const AxiomReport axioms = verify_axioms(model, gamma_base);
  if (!axioms.all_pass())
    throw Error(Errc::InvalidConnection, "base connection violates the contact axioms");

  const Workspace w = make_workspace(model, gamma_base, objective);
  const int p = static_cast<int>(w.basis_dirs.size());
  const std::vector<bool> all_active(p, true);

  fiber::FiberRng rng(options.seed);
  Solution best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (int restart = 0; restart < std::max(1, options.restarts); ++restart) {
    VectorXd sigma0 = VectorXd::Zero(p);
    if (restart > 0)
      for (int i = 0; i < p; ++i) sigma0(i) = rng.uniform(-2, 2);
    const LmOutcome out = lm_minimize(w, sigma0, options, all_active);
    if (options.progress) options.progress(restart, out.iterations, out.sup_norm);
    if (!have_best || out.sup_norm < best.residual_norm) {
      have_best = true;
      best.sigma = out.sigma;
      best.residual_norm = out.sup_norm;
      best.iterations = out.iterations;
      best.restart_index = restart;
    }
    if (best.residual_norm < options.tolerance) break;
  }

  // Float deformation for the report.
  {
    SymmetricCoefficients dummy = SymmetricCoefficients::zero(w.two_n);
    const auto multisets = sym3_index(w.two_n);
    for (std::size_t q = 0; q < multisets.size(); ++q) {
      const auto rq = rationalize(best.sigma(static_cast<int>(q)), 1000000000L);
      dummy.set(multisets[q][0], multisets[q][1], multisets[q][2],
                rq ? *rq : Rational(0));
    }
    best.s_float = deformation_from_coefficients(model, dummy);
  }

  if (best.residual_norm >= options.tolerance)
    throw NoConvergence("best residual " + std::to_string(best.residual_norm), best);

  // Exact rationalization: snap everything, then pin coordinates one at a
  // time (re-optimizing the rest) when plain snapping does not verify.
  auto rounded = round_and_verify(w, gamma_base, best.sigma, options.max_denominator);
  if (!rounded) {
    VectorXd sigma = best.sigma;
    std::vector<bool> active(p, true);
    for (int pinned = 0; pinned < p; ++pinned) {
      // The unpinned coordinate closest to a small rational goes next.
      int pick = -1;
      double dist = std::numeric_limits<double>::infinity();
      Rational pick_value;
      for (int c = 0; c < p; ++c) {
        if (!active[c]) continue;
        const auto q = rationalize(sigma(c), options.max_denominator);
        if (!q) continue;
        const double dd = std::abs(sigma(c) - to_double(*q));
        if (dd < dist) {
          dist = dd;
          pick = c;
          pick_value = *q;
        }
      }
      if (pick < 0) break;
      sigma(pick) = to_double(pick_value);
      active[pick] = false;
      const LmOutcome out = lm_minimize(w, sigma, options, active);
      if (out.sup_norm >= options.tolerance) break;
      sigma = out.sigma;
      sigma(pick) = to_double(pick_value);
      rounded = round_and_verify(w, gamma_base, sigma, options.max_denominator);
      if (rounded) {
        best.sigma = sigma;
        best.residual_norm = out.sup_norm;
        break;
      }
    }
  }
  if (rounded) {
    best.rationalized = *rounded;
    best.exact_zero = true;
    best.s_float = deformation_from_coefficients(model, *rounded);
  }
  return best;
}

}  // namespace ctwist::solver
