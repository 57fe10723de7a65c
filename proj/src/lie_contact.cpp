#include "ctwist/lie_contact.hpp"

#include <algorithm>

namespace ctwist {

LieAlgebra LieAlgebra::zero(std::size_t dim) {
  LieAlgebra a;
  a.dim = dim;
  a.basis_names.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) a.basis_names[i] = "b" + std::to_string(i + 1);
  a.c.assign(dim * dim * dim, Rational(0));
  return a;
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, std::size_t k,
                             const Rational& value) {
  at(i, j, k) = value;
  at(j, i, k) = -value;
}

RatVec LieAlgebra::bracket(const RatVec& x, const RatVec& y) const {
  if (x.size() != dim || y.size() != dim)
    throw Error(Errc::DimensionMismatch, "bracket argument size");
  RatVec out(dim, Rational(0));
  for (std::size_t i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      const Rational f = x[i] * y[j];
      for (std::size_t k = 0; k < dim; ++k) {
        const Rational& cijk = at(i, j, k);
        if (cijk != 0) out[k] += f * cijk;
      }
    }
  }
  return out;
}

RatMat LieAlgebra::ad(const RatVec& x) const {
  RatMat m = linalg::zeros(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec ej(dim, Rational(0));
    ej[j] = 1;
    const RatVec col = bracket(x, ej);
    for (std::size_t k = 0; k < dim; ++k) m[k][j] = col[k];
  }
  return m;
}

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& algebra) {
  std::vector<JacobiViolation> violations;
  const std::size_t d = algebra.dim;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        RatVec ei(d, Rational(0)), ej(d, Rational(0)), ek(d, Rational(0));
        ei[i] = 1;
        ej[j] = 1;
        ek[k] = 1;
        RatVec sum = algebra.bracket(algebra.bracket(ei, ej), ek);
        const RatVec t2 = algebra.bracket(algebra.bracket(ej, ek), ei);
        const RatVec t3 = algebra.bracket(algebra.bracket(ek, ei), ej);
        for (std::size_t m = 0; m < d; ++m) sum[m] += t2[m] + t3[m];
        if (!linalg::is_zero(sum)) violations.push_back({i, j, k, std::move(sum)});
      }
  return violations;
}

Rational ContactModel::omega_full(std::size_t i, std::size_t j) const {
  const std::size_t two_n = 2 * n;
  if (i >= two_n || j >= two_n) return Rational(0);
  return omega[i][j];
}

namespace {

Rational alpha_of(const ContactForm& alpha, const RatVec& x) {
  Rational v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) v += alpha.coefficients[i] * x[i];
  return v;
}

// d_alpha as a matrix on the algebra basis: d_alpha(b_i, b_j) = -alpha([b_i, b_j]).
RatMat d_alpha_matrix(const LieAlgebra& algebra, const ContactForm& alpha) {
  RatMat m = linalg::zeros(algebra.dim, algebra.dim);
  for (std::size_t i = 0; i < algebra.dim; ++i)
    for (std::size_t j = 0; j < algebra.dim; ++j) {
      Rational v = 0;
      for (std::size_t k = 0; k < algebra.dim; ++k) {
        const Rational& c = algebra.at(i, j, k);
        if (c != 0) v -= alpha.coefficients[k] * c;
      }
      m[i][j] = v;
    }
  return m;
}

}  // namespace

Rational contact_volume(const LieAlgebra& algebra, const ContactForm& alpha) {
  const std::size_t d = algebra.dim;
  if (d % 2 == 0 || alpha.coefficients.size() != d)
    throw Error(Errc::DimensionMismatch, "contact form on odd-dimensional algebra");
  const RatMat da = d_alpha_matrix(algebra, alpha);
  // alpha ^ (d alpha)^n (b_1,...,b_{2n+1})
  //   = sum_i (-1)^{i} alpha(b_i) * n! * Pf(da with row/col i removed).
  Rational nfact = 1;
  for (std::size_t i = 2; i <= (d - 1) / 2; ++i) nfact *= Rational(i);
  Rational vol = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (alpha.coefficients[i] == 0) continue;
    RatMat minor;
    minor.reserve(d - 1);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == i) continue;
      RatVec row;
      row.reserve(d - 1);
      for (std::size_t c = 0; c < d; ++c) {
        if (c == i) continue;
        row.push_back(da[r][c]);
      }
      minor.push_back(std::move(row));
    }
    const Rational sign = (i % 2 == 0) ? Rational(1) : Rational(-1);
    vol += sign * alpha.coefficients[i] * nfact * linalg::pfaffian(minor);
  }
  return vol;
}

ContactModel build_model(const LieAlgebra& algebra, const ContactForm& alpha,
                         const std::map<std::string, Rational>& parameters) {
  const std::size_t d = algebra.dim;
  if (d == 0 || d % 2 == 0) throw Error(Errc::BadParameter, "dimension must be odd");
  if (alpha.coefficients.size() != d)
    throw Error(Errc::DimensionMismatch, "contact form length");
  if (!check_jacobi(algebra).empty())
    throw Error(Errc::BadParameter, "structure constants violate the Jacobi identity");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (algebra.at(i, j, k) != -algebra.at(j, i, k))
          throw Error(Errc::BadParameter, "structure constants not antisymmetric");

  const std::size_t n = (d - 1) / 2;
  if (contact_volume(algebra, alpha) == 0)
    throw Error(Errc::NotContact, "alpha wedge (d alpha)^n vanishes on the basis");

  // Reeb field: the kernel of d_alpha is one-dimensional for a contact form,
  // spanned by a vector with alpha != 0.
  const RatMat da = d_alpha_matrix(algebra, alpha);
  const auto null_basis = linalg::kernel(da);
  if (null_basis.size() != 1)
    throw Error(Errc::NoReeb, "d alpha kernel dimension " + std::to_string(null_basis.size()));
  RatVec xi = null_basis[0];
  const Rational a_xi = alpha_of(alpha, xi);
  if (a_xi == 0) throw Error(Errc::NoReeb, "kernel vector annihilated by alpha");
  for (auto& v : xi) v /= a_xi;

  // D-frame: drop the last basis vector with a nonzero alpha coefficient and
  // project the rest into Ker(alpha).
  std::size_t pivot = d;
  for (std::size_t i = d; i-- > 0;) {
    if (alpha.coefficients[i] != 0) {
      pivot = i;
      break;
    }
  }
  ContactModel model;
  model.algebra = algebra;
  model.alpha = alpha;
  model.n = n;
  model.reeb = xi;
  model.parameters = parameters;

  RatMat basis = linalg::zeros(d, d);  // columns: frame vectors
  std::size_t col = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == pivot) continue;
    basis[i][col] = 1;
    if (alpha.coefficients[i] != 0)
      basis[pivot][col] = -alpha.coefficients[i] / alpha.coefficients[pivot];
    ++col;
  }
  for (std::size_t r = 0; r < d; ++r) basis[r][2 * n] = xi[r];

  auto inv = linalg::inverse(basis);
  if (!inv) throw Error(Errc::NoReeb, "adapted frame is singular");
  model.frame.basis = basis;
  model.frame.inverse = *inv;

  // Structure constants in the adapted frame.
  model.c_frame.assign(d * d * d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    RatVec ai(d);
    for (std::size_t r = 0; r < d; ++r) ai[r] = basis[r][i];
    for (std::size_t j = 0; j < d; ++j) {
      RatVec aj(d);
      for (std::size_t r = 0; r < d; ++r) aj[r] = basis[r][j];
      const RatVec br_frame = linalg::mul(model.frame.inverse, algebra.bracket(ai, aj));
      for (std::size_t k = 0; k < d; ++k)
        model.c_frame[(i * d + j) * d + k] = br_frame[k];
    }
  }

  // omega on D in the frame: omega(A_i, A_j) = -alpha([A_i, A_j]), which in
  // frame coordinates is minus the xi-component of the bracket.
  model.omega = linalg::zeros(2 * n, 2 * n);
  for (std::size_t i = 0; i < 2 * n; ++i)
    for (std::size_t j = 0; j < 2 * n; ++j) model.omega[i][j] = -model.cf(i, j, 2 * n);

  if (linalg::determinant(model.omega) == 0 || linalg::pfaffian(model.omega) == 0)
    throw Error(Errc::NotContact, "omega degenerate on the contact distribution");

  // Adapted-frame sanity: alpha(A_i) = 0, alpha(xi) = 1, d alpha(xi, .) = 0.
  for (std::size_t i = 0; i < 2 * n; ++i) {
    RatVec ai(d);
    for (std::size_t r = 0; r < d; ++r) ai[r] = basis[r][i];
    if (alpha_of(alpha, ai) != 0) throw Error(Errc::NotContact, "frame vector outside Ker alpha");
  }
  for (std::size_t j = 0; j < d; ++j)
    if (model.cf(2 * n, j, 2 * n) != 0)
      throw Error(Errc::NoReeb, "d alpha(xi, .) != 0 in the adapted frame");
  return model;
}

RatVec bracket(const ContactModel& model, const RatVec& x, const RatVec& y) {
  const std::size_t d = model.dim();
  if (x.size() != d || y.size() != d)
    throw Error(Errc::DimensionMismatch, "bracket argument size");
  RatVec out(d, Rational(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      const Rational f = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k) {
        const Rational& c = model.cf(i, j, k);
        if (c != 0) out[k] += f * c;
      }
    }
  }
  return out;
}

Rational d_alpha(const ContactModel& model, const RatVec& x, const RatVec& y) {
  const RatVec br = bracket(model, x, y);
  return -br[2 * model.n];
}

SymplecticBasis symplectic_basis(const RatMat& omega) {
  const std::size_t m = omega.size();
  if (m == 0 || m % 2 != 0) throw Error(Errc::Degenerate, "omega must be 2n x 2n");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (omega[i][j] != -omega[j][i]) throw Error(Errc::Degenerate, "omega not skew");

  auto pairing = [&omega, m](const RatVec& u, const RatVec& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (omega[i][j] != 0 && v[j] != 0) s += u[i] * omega[i][j] * v[j];
    }
    return s;
  };

  std::vector<RatVec> pool;
  for (std::size_t i = 0; i < m; ++i) {
    RatVec e(m, Rational(0));
    e[i] = 1;
    pool.push_back(std::move(e));
  }
  std::vector<RatVec> us, vs;
  while (!pool.empty()) {
    // First remaining vector, paired with the first partner it couples to.
    RatVec w1 = pool.front();
    std::size_t partner = pool.size();
    Rational coupling = 0;
    for (std::size_t j = 1; j < pool.size(); ++j) {
      coupling = pairing(w1, pool[j]);
      if (coupling != 0) {
        partner = j;
        break;
      }
    }
    if (partner == pool.size()) throw Error(Errc::Degenerate, "omega has nontrivial radical");
    RatVec w2 = pool[partner];
    RatVec u, v;
    if (coupling > 0) {
      u = w1;
      v = w2;
      for (auto& x : v) x /= coupling;
    } else {
      u = w2;
      v = w1;
      for (auto& x : v) x /= -coupling;
    }
    std::vector<RatVec> next;
    for (std::size_t j = 1; j < pool.size(); ++j) {
      if (j == partner) continue;
      RatVec w = pool[j];
      const Rational wav = pairing(w, v);
      const Rational wau = pairing(w, u);
      for (std::size_t r = 0; r < m; ++r) w[r] += -wav * u[r] + wau * v[r];
      next.push_back(std::move(w));
    }
    us.push_back(std::move(u));
    vs.push_back(std::move(v));
    pool = std::move(next);
  }

  SymplecticBasis out;
  out.basis = linalg::zeros(m, m);
  const std::size_t n = m / 2;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < m; ++r) {
      out.basis[r][i] = us[i][r];
      out.basis[r][i + n] = vs[i][r];
    }
  return out;
}

Rational unimodular_trace(const LieAlgebra& algebra, std::size_t basis_index) {
  RatVec x(algebra.dim, Rational(0));
  x[basis_index] = 1;
  return unimodular_trace(algebra, x);
}

Rational unimodular_trace(const LieAlgebra& algebra, const RatVec& x) {
  const RatMat m = algebra.ad(x);
  Rational tr = 0;
  for (std::size_t i = 0; i < algebra.dim; ++i) tr += m[i][i];
  return tr;
}

bool is_unimodular(const LieAlgebra& algebra) {
  for (std::size_t i = 0; i < algebra.dim; ++i)
    if (unimodular_trace(algebra, i) != 0) return false;
  return true;
}

}  // namespace ctwist
