#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ctwist/lie_contact.hpp"

namespace ctwist {

// Coefficients of a linear connection in the adapted frame:
// nabla_{A_i} A_j = sum_k gamma[i][j][k] A_k.
struct ConnectionTable {
  std::size_t dim = 0;
  std::vector<Rational> gamma;

  static ConnectionTable zero(std::size_t dim);

  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return gamma[(i * dim + j) * dim + k];
  }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) {
    return gamma[(i * dim + j) * dim + k];
  }
  // nabla_{A_i} applied to a frame-coordinate vector.
  RatVec derive(std::size_t i, const RatVec& y) const;
  RatVec entry(std::size_t i, std::size_t j) const;
  void set_entry(std::size_t i, std::size_t j, const RatVec& value);
  bool operator==(const ConnectionTable&) const = default;
};

// Symmetric deformation tensor on the contact distribution;
// S(A_i, A_j) = sum_k s[i][j][k] A_k with i,j,k < 2n.
struct DeformationTensor {
  std::size_t two_n = 0;
  std::vector<Rational> s;

  static DeformationTensor zero(std::size_t two_n);

  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return s[(i * two_n + j) * two_n + k];
  }
  Rational& at(std::size_t i, std::size_t j, std::size_t k) {
    return s[(i * two_n + j) * two_n + k];
  }
  RatVec value(std::size_t i, std::size_t j) const;
  bool is_zero() const;
};

// Totally symmetric coefficients sigma(i,j,k) = omega(S(A_i,A_j), A_k); the
// free parameters of the affine space of contact connections.
struct SymmetricCoefficients {
  std::size_t two_n = 0;
  std::vector<Rational> sigma;  // (2n)^3, totally symmetric

  static SymmetricCoefficients zero(std::size_t two_n);
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const {
    return sigma[(i * two_n + j) * two_n + k];
  }
  void set(std::size_t i, std::size_t j, std::size_t k, const Rational& v);
};

// Multisets {i <= j <= k} indexing the free parameters.
std::vector<std::array<std::size_t, 3>> sym3_index(std::size_t two_n);

DeformationTensor deformation_from_coefficients(const ContactModel& model,
                                                const SymmetricCoefficients& sigma);
SymmetricCoefficients coefficients_from_deformation(const ContactModel& model,
                                                    const DeformationTensor& s);

// Throws InvalidDeformation with the first failing symmetry witness.
void validate_deformation(const ContactModel& model, const DeformationTensor& s);

struct AxiomViolation {
  std::vector<std::size_t> indices;
  Rational residual;
};

struct AxiomCheck {
  bool pass = true;
  std::vector<AxiomViolation> violations;  // capped
};

struct AxiomReport {
  AxiomCheck distribution;      // nabla_X Y in D                  (ncd)
  AxiomCheck reeb_derivation;   // nabla_xi Y = [xi, Y]            (lie)
  AxiomCheck reeb_parallel;     // nabla_X xi = 0                  (nxi)
  AxiomCheck omega_parallel_d;  // (nabla_Y d alpha)(Y1,Y2) = 0    (nda)
  AxiomCheck torsion;           // Eq. (tor), D-part and xi-part
  AxiomCheck omega_parallel;    // derived: nabla omega = 0 on TM

  bool all_pass() const {
    return distribution.pass && reeb_derivation.pass && reeb_parallel.pass &&
           omega_parallel_d.pass && torsion.pass && omega_parallel.pass;
  }
};

AxiomReport verify_axioms(const ContactModel& model, const ConnectionTable& gamma);

// nabla'_{A_i}A_j = 1/2([A_i,A_j] - alpha([A_i,A_j]) xi) on D, with the
// forced xi row/column. Satisfies every axiom except possibly (nda).
ConnectionTable half_bracket_connection(const ContactModel& model);

// The tensor N on D with omega(N(X,Y), Z) = (nabla_X omega)(Y, Z); entry
// (i * 2n + j) holds N(A_i, A_j) in D coordinates.
std::vector<RatVec> omega_defect_tensor(const ContactModel& model,
                                        const ConnectionTable& gamma);

// Symmetrized correction by the tensor N with omega(N(X,Y),Z) = (nabla'_X
// omega)(Y,Z); output is a contact connection, and equals the input when the
// input already has nabla' omega = 0 on D.
ConnectionTable vezzoni_correction(const ContactModel& model, const ConnectionTable& gamma_prime);

ConnectionTable deform(const ContactModel& model, const ConnectionTable& gamma,
                       const DeformationTensor& s);

// Difference of two contact connections as a DeformationTensor (validated).
DeformationTensor difference(const ContactModel& model, const ConnectionTable& a,
                             const ConnectionTable& b);

struct RepairEntry {
  std::size_t i, j;      // frame slot nabla_{A_i} A_j
  RatVec old_value;      // frame coordinates
  RatVec new_value;
  std::string kind;      // "d-block" | "xi-row" | "xi-column" | "xi-component"
};

struct RepairResult {
  ConnectionTable table;
  std::vector<RepairEntry> ledger;
};

// Splits a raw table into the axiom-forced part plus the free totally
// symmetric part, re-materializes the forced entries, and keeps the free part
// by majority vote across its redundant appearances (so isolated slips in a
// printed table are outvoted by the consistent entries).
RepairResult repair_connection(const ContactModel& model, const ConnectionTable& raw);

}  // namespace ctwist
