#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ctwist/errors.hpp"
#include "ctwist/linalg.hpp"
#include "ctwist/rational.hpp"

namespace ctwist {

// Left-invariant data only: vector fields are constant coefficient vectors in
// the chosen basis, and every operation below is exact.
struct LieAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis_names;
  // c[i][j][k] with [b_i, b_j] = sum_k c[i][j][k] b_k, flattened.
  std::vector<Rational> c;

  static LieAlgebra zero(std::size_t dim);

  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return c[(i * dim + j) * dim + k];
  }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) {
    return c[(i * dim + j) * dim + k];
  }
  // Sets c[i][j][k] and c[j][i][k] = -value.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value);

  RatVec bracket(const RatVec& x, const RatVec& y) const;
  RatMat ad(const RatVec& x) const;
};

struct JacobiViolation {
  std::size_t i, j, k;
  RatVec cyclic_sum;
};

std::vector<JacobiViolation> check_jacobi(const LieAlgebra& algebra);

struct ContactForm {
  RatVec coefficients;  // alpha = sum_i coefficients[i] b_i^*
};

// Frame A_1..A_2n spanning Ker(alpha), A_{2n+1} = Reeb field. Columns of
// `basis` are the frame vectors in algebra coordinates.
struct AdaptedFrame {
  RatMat basis;
  RatMat inverse;  // algebra coords -> frame coords
};

struct ContactModel {
  LieAlgebra algebra;
  ContactForm alpha;
  AdaptedFrame frame;
  std::size_t n = 0;  // algebra.dim == 2n+1
  RatVec reeb;        // algebra coordinates
  RatMat omega;       // omega[i][j] = d_alpha(A_i, A_j), i,j < 2n
  std::vector<Rational> c_frame;  // structure constants in the adapted frame
  std::map<std::string, Rational> parameters;

  std::size_t dim() const { return algebra.dim; }
  const Rational& cf(std::size_t i, std::size_t j, std::size_t k) const {
    return c_frame[(i * algebra.dim + j) * algebra.dim + k];
  }
  // omega extended to the full frame with omega(xi, .) = 0.
  Rational omega_full(std::size_t i, std::size_t j) const;
};

// alpha wedge (d alpha)^n evaluated on the full basis; nonzero iff contact.
Rational contact_volume(const LieAlgebra& algebra, const ContactForm& alpha);

ContactModel build_model(const LieAlgebra& algebra, const ContactForm& alpha,
                         const std::map<std::string, Rational>& parameters = {});

// Frame-coordinate bracket of the model (exact).
RatVec bracket(const ContactModel& model, const RatVec& x, const RatVec& y);

// d_alpha(x, y) = -alpha([x, y]) for frame-coordinate vectors.
Rational d_alpha(const ContactModel& model, const RatVec& x, const RatVec& y);

struct SymplecticBasis {
  RatMat basis;  // columns e_1..e_2n in the coordinates omega was given in
};

// Symplectic Gram-Schmidt: omega(e_i, e_{j+n}) = delta_ij and the two other
// defining identities hold exactly. Throws Degenerate if rank < 2n.
SymplecticBasis symplectic_basis(const RatMat& omega);

Rational unimodular_trace(const LieAlgebra& algebra, std::size_t basis_index);
Rational unimodular_trace(const LieAlgebra& algebra, const RatVec& x);
bool is_unimodular(const LieAlgebra& algebra);

}  // namespace ctwist
