#include "ctwist/twistor.hpp"

#include <cmath>
#include <complex>

namespace ctwist::twistor {

namespace {

Mat rat_to_mat(const RatMat& m) {
  Mat out(m.size(), m.empty() ? 0 : m[0].size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out(i, j) = to_double(m[i][j]);
  return out;
}

}  // namespace

Context Context::make(const ContactModel& model, const ConnectionTable& gamma) {
  Context ctx;
  ctx.n = static_cast<int>(model.n);
  ctx.dim = static_cast<int>(model.dim());
  const int two_n = 2 * ctx.n;
  ctx.omega_d = rat_to_mat(model.omega);
  ctx.sympl = rat_to_mat(symplectic_basis(model.omega).basis);
  ctx.sympl_inv = ctx.sympl.inverse();

  const CurvatureTensor r = curvature(model, gamma);
  ctx.curv.resize(ctx.dim * ctx.dim, Mat::Zero(two_n, two_n));
  for (int i = 0; i < ctx.dim; ++i)
    for (int j = 0; j < ctx.dim; ++j) {
      Mat& m = ctx.curv[i * ctx.dim + j];
      for (int k = 0; k < two_n; ++k)
        for (int l = 0; l < two_n; ++l) m(l, k) = to_double(r.at(i, j, k, l));
    }
  ctx.rd_frame.assign(static_cast<std::size_t>(two_n) * two_n * two_n * two_n, 0.0);
  for (int a = 0; a < two_n; ++a)
    for (int b = 0; b < two_n; ++b)
      for (int c = 0; c < two_n; ++c)
        for (int e = 0; e < two_n; ++e) {
          double v = 0;
          for (int l = 0; l < two_n; ++l)
            v += to_double(r.at(a, b, c, l)) * ctx.omega_d(l, e);
          ctx.rd_frame[((a * two_n + b) * two_n + c) * two_n + e] = v;
        }
  return ctx;
}

Mat Context::r_endo(const Vec& x, const Vec& y) const {
  Mat out = Mat::Zero(2 * n, 2 * n);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == 0) continue;
      out += x(i) * y(j) * curv[i * dim + j];
    }
  }
  return out;
}

Mat Context::transport(const Mat& j_sympl) const { return sympl * j_sympl * sympl_inv; }

TwistorTangent TwistorTangent::horizontal_only(const Vec& x, int two_n) {
  TwistorTangent t;
  t.horizontal = x;
  t.vertical = Mat::Zero(two_n, two_n);
  return t;
}

TwistorTangent TwistorTangent::vertical_only(const Mat& v, int dim) {
  TwistorTangent t;
  t.horizontal = Vec::Zero(dim);
  t.vertical = v;
  return t;
}

TwistorPoint point_at(const Context& ctx, const Mat& j_frame) {
  if (!fiber::is_compatible(j_frame, ctx.omega_d, 1e-8))
    throw Error(Errc::InvalidConnection, "J is not compatible with omega at this point");
  return {&ctx, j_frame};
}

TwistorTangent make_tangent(const TwistorPoint& p, const Vec& horizontal, const Mat& vertical) {
  const double anti = (vertical * p.j + p.j * vertical).cwiseAbs().maxCoeff();
  const Mat ov = p.ctx->omega_d * vertical;
  const double skew = (ov - ov.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, vertical.cwiseAbs().maxCoeff());
  if (anti / scale > 1e-8 || skew / scale > 1e-8)
    throw Error(Errc::InvalidDeformation, "vertical part is not tangent to the fibre");
  TwistorTangent t;
  t.horizontal = horizontal;
  t.vertical = vertical;
  return t;
}

namespace {

// J applied to a full frame vector: acts on the D part, kills xi.
Vec j_vec(const TwistorPoint& p, const Vec& x) {
  const int two_n = 2 * p.ctx->n;
  Vec out = Vec::Zero(p.ctx->dim);
  out.head(two_n) = p.j * x.head(two_n);
  return out;
}

}  // namespace

TwistorTangent phi(const TwistorPoint& p, const TwistorTangent& t, int k) {
  if (k != 1 && k != 2) throw Error(Errc::BadParameter, "k must be 1 or 2");
  TwistorTangent out;
  out.horizontal = j_vec(p, t.horizontal);
  const double sign = (k == 1) ? 1.0 : -1.0;
  out.vertical = sign * (p.j * t.vertical);
  return out;
}

double metric_gt(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2,
                 double t) {
  if (!(t > 0)) throw Error(Errc::NonPositiveT, "vertical scale must be positive");
  const int two_n = 2 * p.ctx->n;
  const Vec x = t1.horizontal, y = t2.horizontal;
  double value = x.head(two_n).dot(p.ctx->omega_d * (p.j * y.head(two_n)));
  value += x(two_n) * y(two_n);
  if (t1.vertical.cwiseAbs().maxCoeff() > 0 && t2.vertical.cwiseAbs().maxCoeff() > 0)
    value += t * fiber::fiber_metric({p.j}, t1.vertical, t2.vertical, p.ctx->omega_d);
  return value;
}

Mat endo_curvature(const Context& ctx, const Vec& x, const Vec& y, const Mat& a) {
  const Mat r = ctx.r_endo(x, y);
  return r * a - a * r;
}

Mat n1_horizontal(const TwistorPoint& p, const Vec& x, const Vec& y, int k) {
  if (k != 1 && k != 2) throw Error(Errc::BadParameter, "k must be 1 or 2");
  const Context& ctx = *p.ctx;
  const Vec jx = j_vec(p, x);
  const Vec jy = j_vec(p, y);
  const Mat& j = p.j;
  auto rj = [&](const Vec& u, const Vec& v) {
    const Mat r = ctx.r_endo(u, v);
    return (r * j - j * r).eval();
  };
  const double sign = (k == 1) ? 1.0 : -1.0;
  return -rj(x, y) + rj(jx, jy) - sign * (j * (rj(jx, y) + rj(x, jy)));
}

Vec n1_mixed(const TwistorPoint& p, const Vec& x, const Mat& v, int k, bool* projected) {
  if (k != 1 && k != 2) throw Error(Errc::BadParameter, "k must be 1 or 2");
  const int two_n = 2 * p.ctx->n;
  const Mat vp = fiber::tangent_projection({p.j}, v, p.ctx->omega_d);
  if (projected)
    *projected = (vp - v).cwiseAbs().maxCoeff() >
                 fiber::TAU_ALG * std::max(1.0, v.cwiseAbs().maxCoeff());
  const double factor = 1.0 + ((k % 2 == 0) ? 1.0 : -1.0);
  Vec out = Vec::Zero(p.ctx->dim);
  out.head(two_n) = factor * (p.j * (vp * x.head(two_n)));
  return out;
}

double levi_form(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2) {
  const int two_n = 2 * p.ctx->n;
  const double a1 = std::abs(t1.horizontal(two_n));
  const double a2 = std::abs(t2.horizontal(two_n));
  if (a1 > fiber::TAU_ALG || a2 > fiber::TAU_ALG)
    throw Error(Errc::NotInE, "horizontal part has a xi component");
  return -t1.horizontal.head(two_n).dot(p.ctx->omega_d * t2.horizontal.head(two_n));
}

double d_eta(const TwistorPoint& p, const TwistorTangent& t1, const TwistorTangent& t2) {
  const int two_n = 2 * p.ctx->n;
  return t1.horizontal.head(two_n).dot(p.ctx->omega_d * t2.horizontal.head(two_n));
}

double n1_dd_scalar(const TwistorPoint& p, const Vec& x, const Vec& y, const Vec& z,
                    const Vec& t) {
  const int two_n = 2 * p.ctx->n;
  const Mat n1 = n1_horizontal(p, x, y, 1);
  return (n1 * z.head(two_n)).dot(p.ctx->omega_d * t.head(two_n));
}

double rd_j_minus(const TwistorPoint& p, const Vec& x, const Vec& y, const Vec& z,
                  const Vec& t) {
  using C = std::complex<double>;
  const int two_n = 2 * p.ctx->n;
  const Eigen::MatrixXcd jm =
      0.5 * (Mat::Identity(two_n, two_n).cast<C>() + C(0, 1) * p.j.cast<C>());
  const Eigen::VectorXcd xc = jm * x.head(two_n).cast<C>();
  const Eigen::VectorXcd yc = jm * y.head(two_n).cast<C>();
  const Eigen::VectorXcd zc = jm * z.head(two_n).cast<C>();
  const Eigen::VectorXcd tc = jm * t.head(two_n).cast<C>();
  C value(0, 0);
  for (int a = 0; a < two_n; ++a) {
    if (xc(a) == C(0, 0)) continue;
    for (int b = 0; b < two_n; ++b) {
      if (yc(b) == C(0, 0)) continue;
      const C fab = xc(a) * yc(b);
      for (int c = 0; c < two_n; ++c)
        for (int e = 0; e < two_n; ++e) {
          const double rv = p.ctx->rd(a, b, c, e);
          if (rv != 0) value += fab * zc(c) * tc(e) * rv;
        }
    }
  }
  return -16.0 * value.imag();
}

ScanReport normality_scan(const ContactModel& model, const ConnectionTable& gamma, int k,
                          int samples, std::uint64_t seed, double tol) {
  if (k != 1 && k != 2) throw Error(Errc::BadParameter, "k must be 1 or 2");
  const Context ctx = Context::make(model, gamma);
  const int two_n = 2 * ctx.n;

  ScanReport report;
  report.k = k;
  report.samples = samples;
  report.seed = seed;

  const ClassificationReport cls = classify(model, gamma);
  report.classify_normal = (k == 1) ? cls.normal_phi1 : cls.normal_phi2;
  report.classify_cr_integrable = (k == 1) ? cls.cr1_integrable : cls.cr2_integrable;

  const auto js = fiber::sample_fiber(ctx.n, samples, seed);
  for (int s = 0; s < static_cast<int>(js.size()); ++s) {
    const TwistorPoint p = point_at(ctx, ctx.transport(js[s].m));
    for (int i = 0; i < two_n; ++i) {
      for (int j = i + 1; j < two_n; ++j) {
        const double m = n1_horizontal(p, Vec::Unit(ctx.dim, i), Vec::Unit(ctx.dim, j), k)
                             .cwiseAbs()
                             .maxCoeff();
        if (m > report.max_dd) {
          report.max_dd = m;
          report.witness_dd = {s, i, j};
        }
      }
      const double m = n1_horizontal(p, Vec::Unit(ctx.dim, i), Vec::Unit(ctx.dim, two_n), k)
                           .cwiseAbs()
                           .maxCoeff();
      if (m > report.max_xi) {
        report.max_xi = m;
        report.witness_xi = {s, i, two_n};
      }
    }
    const auto verticals = fiber::vertical_basis({p.j}, ctx.omega_d);
    for (const auto& v : verticals)
      for (int i = 0; i < ctx.dim; ++i) {
        const double m =
            n1_mixed(p, Vec::Unit(ctx.dim, i), v, k, nullptr).cwiseAbs().maxCoeff();
        report.max_mixed = std::max(report.max_mixed, m);
      }
  }

  report.scan_normal = report.max_dd < tol && report.max_xi < tol &&
                       report.max_mixed < tol && report.max_vv < tol;
  report.scan_cr_integrable =
      report.max_dd < tol && report.max_mixed < tol && report.max_vv < tol;
  report.agrees = (report.scan_normal == report.classify_normal) &&
                  (report.scan_cr_integrable == report.classify_cr_integrable);
  return report;
}

}  // namespace ctwist::twistor
