#include "ctwist/connection.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace ctwist {

namespace {

constexpr std::size_t VIOLATION_CAP = 16;

void note(AxiomCheck& check, std::vector<std::size_t> indices, Rational residual) {
  check.pass = false;
  if (check.violations.size() < VIOLATION_CAP)
    check.violations.push_back({std::move(indices), std::move(residual)});
}

// omega extended to full frame vectors (xi pairs with nothing).
Rational omega_vec(const ContactModel& model, const RatVec& u, const RatVec& v) {
  const std::size_t two_n = 2 * model.n;
  Rational s = 0;
  for (std::size_t a = 0; a < two_n; ++a) {
    if (u[a] == 0) continue;
    for (std::size_t b = 0; b < two_n; ++b)
      if (model.omega[a][b] != 0 && v[b] != 0) s += u[a] * model.omega[a][b] * v[b];
  }
  return s;
}

RatVec frame_unit(std::size_t dim, std::size_t i) {
  RatVec e(dim, Rational(0));
  e[i] = 1;
  return e;
}

}  // namespace

ConnectionTable ConnectionTable::zero(std::size_t dim) {
  ConnectionTable t;
  t.dim = dim;
  t.gamma.assign(dim * dim * dim, Rational(0));
  return t;
}

RatVec ConnectionTable::derive(std::size_t i, const RatVec& y) const {
  RatVec out(dim, Rational(0));
  for (std::size_t j = 0; j < dim; ++j) {
    if (y[j] == 0) continue;
    for (std::size_t k = 0; k < dim; ++k) {
      const Rational& g = at(i, j, k);
      if (g != 0) out[k] += y[j] * g;
    }
  }
  return out;
}

RatVec ConnectionTable::entry(std::size_t i, std::size_t j) const {
  RatVec v(dim);
  for (std::size_t k = 0; k < dim; ++k) v[k] = at(i, j, k);
  return v;
}

void ConnectionTable::set_entry(std::size_t i, std::size_t j, const RatVec& value) {
  for (std::size_t k = 0; k < dim; ++k) at(i, j, k) = value[k];
}

DeformationTensor DeformationTensor::zero(std::size_t two_n) {
  DeformationTensor s;
  s.two_n = two_n;
  s.s.assign(two_n * two_n * two_n, Rational(0));
  return s;
}

RatVec DeformationTensor::value(std::size_t i, std::size_t j) const {
  RatVec v(two_n);
  for (std::size_t k = 0; k < two_n; ++k) v[k] = at(i, j, k);
  return v;
}

bool DeformationTensor::is_zero() const {
  for (const auto& x : s)
    if (x != 0) return false;
  return true;
}

SymmetricCoefficients SymmetricCoefficients::zero(std::size_t two_n) {
  SymmetricCoefficients c;
  c.two_n = two_n;
  c.sigma.assign(two_n * two_n * two_n, Rational(0));
  return c;
}

void SymmetricCoefficients::set(std::size_t i, std::size_t j, std::size_t k,
                                const Rational& v) {
  std::array<std::size_t, 3> idx{i, j, k};
  std::sort(idx.begin(), idx.end());
  do {
    sigma[(idx[0] * two_n + idx[1]) * two_n + idx[2]] = v;
  } while (std::next_permutation(idx.begin(), idx.end()));
}

std::vector<std::array<std::size_t, 3>> sym3_index(std::size_t two_n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = i; j < two_n; ++j)
      for (std::size_t k = j; k < two_n; ++k) out.push_back({i, j, k});
  return out;
}

DeformationTensor deformation_from_coefficients(const ContactModel& model,
                                                const SymmetricCoefficients& sigma) {
  const std::size_t two_n = 2 * model.n;
  const auto omega_t_inv = linalg::inverse(linalg::transpose(model.omega));
  if (!omega_t_inv) throw Error(Errc::OmegaDegenerate, "omega not invertible");
  DeformationTensor s = DeformationTensor::zero(two_n);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j) {
      RatVec rhs(two_n);
      for (std::size_t k = 0; k < two_n; ++k) rhs[k] = sigma.at(i, j, k);
      const RatVec v = linalg::mul(*omega_t_inv, rhs);
      for (std::size_t k = 0; k < two_n; ++k) s.at(i, j, k) = v[k];
    }
  return s;
}

SymmetricCoefficients coefficients_from_deformation(const ContactModel& model,
                                                    const DeformationTensor& s) {
  const std::size_t two_n = 2 * model.n;
  SymmetricCoefficients sigma = SymmetricCoefficients::zero(two_n);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k) {
        Rational v = 0;
        for (std::size_t m = 0; m < two_n; ++m)
          if (s.at(i, j, m) != 0 && model.omega[m][k] != 0)
            v += s.at(i, j, m) * model.omega[m][k];
        sigma.sigma[(i * two_n + j) * two_n + k] = v;
      }
  return sigma;
}

void validate_deformation(const ContactModel& model, const DeformationTensor& s) {
  const std::size_t two_n = 2 * model.n;
  if (s.two_n != two_n) throw Error(Errc::DimensionMismatch, "deformation size");
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = i + 1; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k)
        if (s.at(i, j, k) != s.at(j, i, k))
          throw Error(Errc::InvalidDeformation,
                      "S(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                          ") != S(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ")");
  const SymmetricCoefficients sigma = coefficients_from_deformation(model, s);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k)
        if (sigma.at(i, j, k) != sigma.at(i, k, j))
          throw Error(Errc::InvalidDeformation,
                      "omega(S(A_i,A_j),A_k) not symmetric at (" + std::to_string(i + 1) +
                          "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
}

ConnectionTable half_bracket_connection(const ContactModel& model) {
  const std::size_t d = model.dim();
  const std::size_t two_n = 2 * model.n;
  ConnectionTable t = ConnectionTable::zero(d);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k)
        t.at(i, j, k) = model.cf(i, j, k) / 2;
  for (std::size_t j = 0; j < two_n; ++j)
    for (std::size_t k = 0; k < two_n; ++k) t.at(two_n, j, k) = model.cf(two_n, j, k);
  return t;
}

namespace {

// tau(i,j,k) = omega(nabla_{A_i} A_j, A_k), ignoring xi components.
Rational tau_of(const ContactModel& model, const ConnectionTable& t, std::size_t i,
                std::size_t j, std::size_t k) {
  const std::size_t two_n = 2 * model.n;
  Rational v = 0;
  for (std::size_t m = 0; m < two_n; ++m)
    if (t.at(i, j, m) != 0 && model.omega[m][k] != 0) v += t.at(i, j, m) * model.omega[m][k];
  return v;
}

// beta(i,j,k) = omega([A_i,A_j]_D, A_k).
Rational beta_of(const ContactModel& model, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t two_n = 2 * model.n;
  Rational v = 0;
  for (std::size_t m = 0; m < two_n; ++m)
    if (model.cf(i, j, m) != 0 && model.omega[m][k] != 0)
      v += model.cf(i, j, m) * model.omega[m][k];
  return v;
}

// The particular contact connection with vanishing totally symmetric part:
// phi(i,j,k) = (beta(i,j,k) - beta(k,i,j)) / 3. This is exactly the
// Vezzoni-corrected half-bracket connection.
Rational phi_of(const ContactModel& model, std::size_t i, std::size_t j, std::size_t k) {
  return (beta_of(model, i, j, k) - beta_of(model, k, i, j)) / 3;
}

RatVec gamma_entry_from_tau(const ContactModel& model, const RatMat& omega_t_inv,
                            const std::vector<Rational>& tau_row) {
  RatVec v = linalg::mul(omega_t_inv, tau_row);
  v.resize(model.dim(), Rational(0));  // xi component zero
  return v;
}

}  // namespace

std::vector<RatVec> omega_defect_tensor(const ContactModel& model,
                                        const ConnectionTable& gamma) {
  const std::size_t two_n = 2 * model.n;
  const auto omega_t_inv = linalg::inverse(linalg::transpose(model.omega));
  if (!omega_t_inv) throw Error(Errc::OmegaDegenerate, "omega not invertible");
  // omega(N(A_i,A_j), A_k) = (nabla_{A_i} omega)(A_j, A_k)
  //                        = -tau(i,j,k) + tau(i,k,j).
  std::vector<RatVec> n_tensor(two_n * two_n);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j) {
      RatVec rhs(two_n);
      for (std::size_t k = 0; k < two_n; ++k)
        rhs[k] = -tau_of(model, gamma, i, j, k) + tau_of(model, gamma, i, k, j);
      n_tensor[i * two_n + j] = linalg::mul(*omega_t_inv, rhs);
    }
  return n_tensor;
}

ConnectionTable vezzoni_correction(const ContactModel& model,
                                   const ConnectionTable& gamma_prime) {
  const std::size_t d = model.dim();
  (void)d;
  const std::size_t two_n = 2 * model.n;
  const std::vector<RatVec> n_tensor = omega_defect_tensor(model, gamma_prime);

  ConnectionTable t = gamma_prime;
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j) {
      const RatVec& nij = n_tensor[i * two_n + j];
      const RatVec& nji = n_tensor[j * two_n + i];
      for (std::size_t k = 0; k < two_n; ++k)
        t.at(i, j, k) += (nij[k] + nji[k]) / 3;
    }
  return t;
}

AxiomReport verify_axioms(const ContactModel& model, const ConnectionTable& gamma) {
  AxiomReport report;
  const std::size_t d = model.dim();
  const std::size_t two_n = 2 * model.n;
  if (gamma.dim != d) throw Error(Errc::DimensionMismatch, "connection table size");

  // (ncd): nabla_X Y stays in D for Y in D.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      if (gamma.at(i, j, two_n) != 0)
        note(report.distribution, {i, j}, gamma.at(i, j, two_n));

  // (lie): nabla_xi Y = [xi, Y].
  for (std::size_t j = 0; j < two_n; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const Rational r = gamma.at(two_n, j, k) - model.cf(two_n, j, k);
      if (r != 0) note(report.reeb_derivation, {j, k}, r);
    }

  // (nxi): nabla_X xi = 0.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (gamma.at(i, two_n, k) != 0) note(report.reeb_parallel, {i, k}, gamma.at(i, two_n, k));

  // (nda): (nabla_Y d alpha)(Y1, Y2) = 0 on D.
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = j + 1; k < two_n; ++k) {
        const Rational r = -tau_of(model, gamma, i, j, k) + tau_of(model, gamma, i, k, j);
        if (r != 0) note(report.omega_parallel_d, {i, j, k}, r);
      }

  // (tor): [X1,X2] = nabla_{X1}X2 - nabla_{X2}X1 - d alpha(X1,X2) xi,
  // componentwise over all frame pairs (this covers the xi component of the
  // bracket as well, even though it is automatic for left-invariant data).
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Rational rhs = gamma.at(i, j, k) - gamma.at(j, i, k);
        if (k == two_n) rhs -= model.omega_full(i, j);
        const Rational r = model.cf(i, j, k) - rhs;
        if (r != 0) note(report.torsion, {i, j, k}, r);
      }
    }

  // Derived: nabla omega = 0 on all of TM.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        const RatVec gj = gamma.entry(i, j);
        const RatVec gk = gamma.entry(i, k);
        const Rational r =
            -omega_vec(model, gj, frame_unit(d, k)) - omega_vec(model, frame_unit(d, j), gk);
        if (r != 0) note(report.omega_parallel, {i, j, k}, r);
      }

  // Lemma cross-check: the five axioms force nabla omega = 0.
  if (report.distribution.pass && report.reeb_derivation.pass && report.reeb_parallel.pass &&
      report.omega_parallel_d.pass && report.torsion.pass && !report.omega_parallel.pass)
    throw std::logic_error("axioms pass but nabla omega != 0; frame data corrupt");

  return report;
}

ConnectionTable deform(const ContactModel& model, const ConnectionTable& gamma,
                       const DeformationTensor& s) {
  validate_deformation(model, s);
  const std::size_t two_n = 2 * model.n;
  ConnectionTable t = gamma;
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k) t.at(i, j, k) += s.at(i, j, k);
  return t;
}

DeformationTensor difference(const ContactModel& model, const ConnectionTable& a,
                             const ConnectionTable& b) {
  const std::size_t d = model.dim();
  const std::size_t two_n = 2 * model.n;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      if (a.at(i, two_n, k) != b.at(i, two_n, k) || a.at(two_n, i, k) != b.at(two_n, i, k))
        throw Error(Errc::InvalidConnection, "tables differ on forced xi entries");
  DeformationTensor s = DeformationTensor::zero(two_n);
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j)
      for (std::size_t k = 0; k < two_n; ++k) s.at(i, j, k) = a.at(i, j, k) - b.at(i, j, k);
  validate_deformation(model, s);
  return s;
}

RepairResult repair_connection(const ContactModel& model, const ConnectionTable& raw) {
  const std::size_t d = model.dim();
  const std::size_t two_n = 2 * model.n;
  const auto omega_t_inv = linalg::inverse(linalg::transpose(model.omega));
  if (!omega_t_inv) throw Error(Errc::OmegaDegenerate, "omega not invertible");

  RepairResult result;
  result.table = ConnectionTable::zero(d);
  ConnectionTable& out = result.table;

  // Forced xi row and column.
  for (std::size_t j = 0; j < two_n; ++j)
    for (std::size_t k = 0; k < d; ++k) out.at(two_n, j, k) = model.cf(two_n, j, k);

  // Free totally symmetric part, recovered by majority vote across the
  // redundant appearances of each coefficient; with at most one corrupted
  // slot per index multiset the consistent entries win.
  SymmetricCoefficients sigma = SymmetricCoefficients::zero(two_n);
  for (const auto& ms : sym3_index(two_n)) {
    std::vector<std::array<std::size_t, 3>> arrangements;
    std::array<std::size_t, 3> idx = ms;
    std::sort(idx.begin(), idx.end());
    do {
      arrangements.push_back(idx);
    } while (std::next_permutation(idx.begin(), idx.end()));
    std::vector<Rational> values;
    std::vector<int> counts;
    std::vector<std::size_t> first_seen;
    for (std::size_t a = 0; a < arrangements.size(); ++a) {
      const auto& [i, j, k] = arrangements[a];
      const Rational obs = tau_of(model, raw, i, j, k) - phi_of(model, i, j, k);
      bool found = false;
      for (std::size_t v = 0; v < values.size(); ++v)
        if (values[v] == obs) {
          ++counts[v];
          found = true;
          break;
        }
      if (!found) {
        values.push_back(obs);
        counts.push_back(1);
        first_seen.push_back(a);
      }
    }
    std::size_t best = 0;
    for (std::size_t v = 1; v < values.size(); ++v)
      if (counts[v] > counts[best] ||
          (counts[v] == counts[best] && first_seen[v] < first_seen[best]))
        best = v;
    sigma.set(ms[0], ms[1], ms[2], values[best]);
  }

  // Rebuild the D block from phi + sigma.
  for (std::size_t i = 0; i < two_n; ++i)
    for (std::size_t j = 0; j < two_n; ++j) {
      RatVec tau_row(two_n);
      for (std::size_t k = 0; k < two_n; ++k)
        tau_row[k] = phi_of(model, i, j, k) + sigma.at(i, j, k);
      const RatVec v = gamma_entry_from_tau(model, *omega_t_inv, tau_row);
      out.set_entry(i, j, v);
    }

  // Ledger: every slot whose value changed, by category.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const RatVec before = raw.entry(i, j);
      const RatVec after = out.entry(i, j);
      if (before == after) continue;
      std::string kind;
      if (i == two_n)
        kind = "xi-row";
      else if (j == two_n)
        kind = "xi-column";
      else if (before[two_n] != 0 && [&] {
                 RatVec b = before;
                 b[two_n] = 0;
                 return b == after;
               }())
        kind = "xi-component";
      else
        kind = "d-block";
      result.ledger.push_back({i, j, before, after, kind});
    }
  return result;
}

}  // namespace ctwist
