#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "ctwist/connection.hpp"
#include "ctwist/lie_contact.hpp"

namespace ctwist {

// Curvature with the sign convention R(X,Y) = nabla_{[X,Y]} - [nabla_X, nabla_Y]
// (opposite to most references; all verdicts below are sign-independent).
struct CurvatureTensor {
  std::size_t dim = 0;
  std::vector<Rational> r;  // R(A_i,A_j)A_k = sum_l r[i][j][k][l] A_l

  const Rational& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
    return r[((i * dim + j) * dim + k) * dim + l];
  }
  Rational& at(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
    return r[((i * dim + j) * dim + k) * dim + l];
  }
  RatVec apply(std::size_t i, std::size_t j, const RatVec& z) const;
  bool is_zero() const;
};

CurvatureTensor curvature(const ContactModel& model, const ConnectionTable& gamma);

// Covariant 4-tensor R_D(X,Y,Z,T) = omega(R(X,Y)Z, T) over a basis of D whose
// omega-matrix is carried along (the adapted frame or a symplectic basis).
struct FourTensorD {
  std::size_t two_n = 0;
  std::vector<Rational> rd;
  RatMat omega;        // omega in this basis
  RatMat basis;        // columns: basis vectors in adapted-frame coordinates

  const Rational& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return rd[((a * two_n + b) * two_n + c) * two_n + d];
  }
  Rational& at(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return rd[((a * two_n + b) * two_n + c) * two_n + d];
  }
  bool is_zero() const;
};

// R_D over the symplectic basis fixed by symplectic_basis(model.omega).
FourTensorD rd_tensor(const ContactModel& model, const CurvatureTensor& r);
// R_D over the adapted D-frame itself.
FourTensorD rd_tensor_frame(const ContactModel& model, const CurvatureTensor& r);

struct SymplecticTensorChecks {
  bool skew_12 = false;
  bool symmetric_34 = false;
  bool bianchi = false;
  bool all() const { return skew_12 && symmetric_34 && bianchi; }
};
SymplecticTensorChecks check_tensor_identities(const FourTensorD& rd);

// sigma_R(X,Y) = Trace{Z -> R(X,Z)Y}, as a matrix over the tensor's basis.
RatMat ricci(const FourTensorD& rd);

// The pure-trace tensor built from a symmetric P (the reducible family);
// ricci() of the result equals P exactly (factor pinned by test).
FourTensorD ricci_type_tensor(const RatMat& p, const RatMat& omega, const RatMat& basis);

// Projection onto the reducible summand: the same expression with P = sigma.
FourTensorD ricci_type_projection(const FourTensorD& rd, const RatMat& sigma);

struct RicciTypeResult {
  bool ricci_type = false;
  Rational residual_norm;  // max |component| of rd - projection
  std::optional<std::array<std::size_t, 4>> witness;  // first nonzero residual slot
};
RicciTypeResult is_ricci_type(const FourTensorD& rd);

struct ReebCurvature {
  std::size_t dim = 0;
  std::vector<RatVec> values;  // R(A_i, xi)A_j, row-major over (i, j)
  bool zero = true;
};
ReebCurvature reeb_curvature(const ContactModel& model, const CurvatureTensor& r);

struct ClassificationReport {
  bool is_flat = false;
  bool reeb_flat = false;
  bool ricci_type = false;
  Rational ricci_type_residual_norm;
  bool normal_phi1 = false;
  bool normal_phi2 = false;   // constant: the second structure is never normal
  bool cr1_integrable = false;
  bool cr2_integrable = false;  // constant: never integrable
  bool xi_h_killing = false;
};

// Requires a valid contact connection; throws InvalidConnection otherwise
// (run repair_connection first for raw tables).
ClassificationReport classify(const ContactModel& model, const ConnectionTable& gamma);

}  // namespace ctwist
