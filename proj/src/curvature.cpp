#include "ctwist/curvature.hpp"

namespace ctwist {

RatVec CurvatureTensor::apply(std::size_t i, std::size_t j, const RatVec& z) const {
  RatVec out(dim, Rational(0));
  for (std::size_t k = 0; k < dim; ++k) {
    if (z[k] == 0) continue;
    for (std::size_t l = 0; l < dim; ++l) {
      const Rational& v = at(i, j, k, l);
      if (v != 0) out[l] += z[k] * v;
    }
  }
  return out;
}

bool CurvatureTensor::is_zero() const {
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

CurvatureTensor curvature(const ContactModel& model, const ConnectionTable& gamma) {
  const std::size_t d = model.dim();
  CurvatureTensor r;
  r.dim = d;
  r.r.assign(d * d * d * d, Rational(0));
  // R(A_i,A_j)A_k = nabla_{[A_i,A_j]}A_k - nabla_{A_i}nabla_{A_j}A_k
  //                                      + nabla_{A_j}nabla_{A_i}A_k.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        RatVec val(d, Rational(0));
        for (std::size_t m = 0; m < d; ++m) {
          const Rational& c = model.cf(i, j, m);
          if (c == 0) continue;
          for (std::size_t l = 0; l < d; ++l) {
            const Rational& g = gamma.at(m, k, l);
            if (g != 0) val[l] += c * g;
          }
        }
        for (std::size_t p = 0; p < d; ++p) {
          const Rational& gjk = gamma.at(j, k, p);
          if (gjk != 0)
            for (std::size_t l = 0; l < d; ++l) {
              const Rational& g = gamma.at(i, p, l);
              if (g != 0) val[l] -= gjk * g;
            }
          const Rational& gik = gamma.at(i, k, p);
          if (gik != 0)
            for (std::size_t l = 0; l < d; ++l) {
              const Rational& g = gamma.at(j, p, l);
              if (g != 0) val[l] += gik * g;
            }
        }
        for (std::size_t l = 0; l < d; ++l) {
          r.at(i, j, k, l) = val[l];
          r.at(j, i, k, l) = -val[l];
        }
      }
  return r;
}

bool FourTensorD::is_zero() const {
  for (const auto& v : rd)
    if (v != 0) return false;
  return true;
}

namespace {

FourTensorD rd_in_basis(const ContactModel& model, const CurvatureTensor& r,
                        const RatMat& basis) {
  const std::size_t two_n = 2 * model.n;
  const std::size_t d = model.dim();
  FourTensorD out;
  out.two_n = two_n;
  out.basis = basis;
  out.rd.assign(two_n * two_n * two_n * two_n, Rational(0));

  // omega in the new basis.
  out.omega = linalg::zeros(two_n, two_n);
  for (std::size_t a = 0; a < two_n; ++a)
    for (std::size_t b = 0; b < two_n; ++b) {
      Rational v = 0;
      for (std::size_t i = 0; i < two_n; ++i)
        for (std::size_t j = 0; j < two_n; ++j)
          if (basis[i][a] != 0 && model.omega[i][j] != 0 && basis[j][b] != 0)
            v += basis[i][a] * model.omega[i][j] * basis[j][b];
      out.omega[a][b] = v;
    }

  // Contract one slot at a time; sizes are tiny so clarity wins.
  // rd_frame[i][j][k][l'] = sum_l r[i][j][k][l] omega[l][l'], D indices only.
  std::vector<Rational> rf(two_n * two_n * two_n * two_n, Rational(0));
  auto rf_at = [two_n, &rf](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t e) -> Rational& {
    return rf[((a * two_n + b) * two_n + c) * two_n + e];
  };
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k)
        for (std::size_t lp = 0; lp < two_n; ++lp) {
          Rational v = 0;
          for (std::size_t l = 0; l < two_n; ++l) {
            const Rational& rv = r.at(i, j, k, l);
            if (rv != 0 && model.omega[l][lp] != 0) v += rv * model.omega[l][lp];
          }
          rf_at(i, j, k, lp) = v;
        }
  (void)d;
  for (std::size_t a = 0; a < two_n; ++a)
    for (std::size_t b = 0; b < two_n; ++b)
      for (std::size_t c = 0; c < two_n; ++c)
        for (std::size_t e = 0; e < two_n; ++e) {
          Rational v = 0;
          for (std::size_t i = 0; i < two_n; ++i) {
            if (basis[i][a] == 0) continue;
            for (std::size_t j = 0; j < two_n; ++j) {
              if (basis[j][b] == 0) continue;
              const Rational fij = basis[i][a] * basis[j][b];
              for (std::size_t k = 0; k < two_n; ++k) {
                if (basis[k][c] == 0) continue;
                for (std::size_t l = 0; l < two_n; ++l) {
                  if (basis[l][e] == 0) continue;
                  const Rational& rv = rf_at(i, j, k, l);
                  if (rv != 0) v += fij * basis[k][c] * basis[l][e] * rv;
                }
              }
            }
          }
          out.at(a, b, c, e) = v;
        }
  return out;
}

}  // namespace

FourTensorD rd_tensor(const ContactModel& model, const CurvatureTensor& r) {
  const SymplecticBasis sb = symplectic_basis(model.omega);
  return rd_in_basis(model, r, sb.basis);
}

FourTensorD rd_tensor_frame(const ContactModel& model, const CurvatureTensor& r) {
  return rd_in_basis(model, r, linalg::identity(2 * model.n));
}

SymplecticTensorChecks check_tensor_identities(const FourTensorD& rd) {
  const std::size_t m = rd.two_n;
  SymplecticTensorChecks out;
  out.skew_12 = out.symmetric_34 = out.bianchi = true;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t e = 0; e < m; ++e) {
          if (rd.at(a, b, c, e) != -rd.at(b, a, c, e)) out.skew_12 = false;
          if (rd.at(a, b, c, e) != rd.at(a, b, e, c)) out.symmetric_34 = false;
          if (rd.at(a, b, c, e) + rd.at(b, c, a, e) + rd.at(c, a, b, e) != 0)
            out.bianchi = false;
        }
  return out;
}

RatMat ricci(const FourTensorD& rd) {
  const std::size_t m = rd.two_n;
  const auto w_t_inv = linalg::inverse(linalg::transpose(rd.omega));
  if (!w_t_inv) throw Error(Errc::OmegaDegenerate, "tensor omega not invertible");
  RatMat sigma = linalg::zeros(m, m);
  // sigma(X,Y) = Trace{Z -> R(X,Z)Y}; in a symplectic basis this reduces to
  // sum_i [R(X,E_i,Y,E_{i+n}) - R(X,E_{i+n},Y,E_i)].
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational v = 0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t c = 0; c < m; ++c) {
          const Rational& w = (*w_t_inv)[a][c];
          if (w != 0 && rd.at(i, a, j, c) != 0) v += w * rd.at(i, a, j, c);
        }
      sigma[i][j] = v;
    }
  return sigma;
}

FourTensorD ricci_type_tensor(const RatMat& p, const RatMat& omega, const RatMat& basis) {
  const std::size_t m = omega.size();
  FourTensorD out;
  out.two_n = m;
  out.omega = omega;
  out.basis = basis;
  out.rd.assign(m * m * m * m, Rational(0));
  const Rational factor = Rational(1, static_cast<long long>(m) + 2);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t e = 0; e < m; ++e)
          out.at(a, b, c, e) =
              factor * (-omega[a][c] * p[b][e] + omega[b][e] * p[a][c] -
                        omega[a][e] * p[b][c] + omega[b][c] * p[a][e] -
                        2 * omega[a][b] * p[c][e]);
  return out;
}

FourTensorD ricci_type_projection(const FourTensorD& rd, const RatMat& sigma) {
  return ricci_type_tensor(sigma, rd.omega, rd.basis);
}

RicciTypeResult is_ricci_type(const FourTensorD& rd) {
  const RatMat sigma = ricci(rd);
  const FourTensorD proj = ricci_type_projection(rd, sigma);
  RicciTypeResult out;
  out.ricci_type = true;
  out.residual_norm = 0;
  const std::size_t m = rd.two_n;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t e = 0; e < m; ++e) {
          const Rational res = rd.at(a, b, c, e) - proj.at(a, b, c, e);
          if (res != 0) {
            if (out.ricci_type) {
              out.ricci_type = false;
              out.witness = {a, b, c, e};
            }
            const Rational mag = res < 0 ? -res : res;
            if (mag > out.residual_norm) out.residual_norm = mag;
          }
        }
  return out;
}

ReebCurvature reeb_curvature(const ContactModel& model, const CurvatureTensor& r) {
  const std::size_t d = model.dim();
  const std::size_t xi = 2 * model.n;
  ReebCurvature out;
  out.dim = d;
  out.values.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      RatVec v(d);
      for (std::size_t l = 0; l < d; ++l) v[l] = r.at(i, xi, j, l);
      if (!linalg::is_zero(v)) out.zero = false;
      out.values[i * d + j] = std::move(v);
    }
  return out;
}

ClassificationReport classify(const ContactModel& model, const ConnectionTable& gamma) {
  const AxiomReport axioms = verify_axioms(model, gamma);
  if (!axioms.all_pass())
    throw Error(Errc::InvalidConnection,
                "table violates the contact axioms; run repair_connection first");
  const CurvatureTensor r = curvature(model, gamma);
  ClassificationReport report;
  report.is_flat = r.is_zero();
  report.reeb_flat = reeb_curvature(model, r).zero;
  const RicciTypeResult rt = is_ricci_type(rd_tensor_frame(model, r));
  report.ricci_type = rt.ricci_type;
  report.ricci_type_residual_norm = rt.residual_norm;
  report.normal_phi1 = report.reeb_flat && report.ricci_type;
  report.normal_phi2 = false;
  report.cr1_integrable = report.ricci_type;
  report.cr2_integrable = false;
  report.xi_h_killing = report.reeb_flat;
  return report;
}

}  // namespace ctwist
