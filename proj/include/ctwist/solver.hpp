#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>

#include "ctwist/connection.hpp"
#include "ctwist/curvature.hpp"

namespace ctwist::solver {

enum class ObjectiveKind { Flat, RicciType, ReebFlat, Normal };

struct Objective {
  ObjectiveKind kind = ObjectiveKind::Flat;
  // Per-block weights; Normal concatenates the RicciType and ReebFlat blocks.
  double weight_ricci = 1.0;
  double weight_reeb = 1.0;
};

struct SolverOptions {
  int max_iterations = 200;
  int restarts = 20;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;  // on the residual sup-norm
  double damping_init = 1e-3;
  long max_denominator = 1000;  // for rationalization
  // Called after every restart with (restart, iterations, residual sup-norm).
  std::function<void(int, int, double)> progress;
};

struct Solution {
  Eigen::VectorXd sigma;  // free parameters, ordered like sym3_index(2n)
  DeformationTensor s_float;
  double residual_norm = 0;
  int iterations = 0;
  int restart_index = 0;
  // Present only when continued-fraction rounding re-verified exactly; the
  // rationalized deformation then makes the objective residual identically
  // zero in rational arithmetic.
  std::optional<SymmetricCoefficients> rationalized;
  bool exact_zero = false;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, Solution best)
      : Error(Errc::NoConvergence, what), best_(std::move(best)) {}
  const Solution& best() const { return best_; }

 private:
  Solution best_;
};

// Residual components are polynomials of degree <= 2 in sigma; the zero
// vector is equivalent to the objective holding exactly.
Eigen::VectorXd residual(const ContactModel& model, const ConnectionTable& gamma_base,
                         const Eigen::VectorXd& sigma, const Objective& objective);

// Analytic derivative of residual() in the sigma parameters.
Eigen::MatrixXd jacobian(const ContactModel& model, const ConnectionTable& gamma_base,
                         const Eigen::VectorXd& sigma, const Objective& objective);

// Damped least squares over seeded random restarts; best restart by residual
// sup-norm, ties by lowest restart index. Deterministic for fixed options.
Solution solve(const ContactModel& model, const ConnectionTable& gamma_base,
               const Objective& objective, const SolverOptions& options);

// Exactness check used for rationalization and tests: the objective residual
// of gamma_base deformed by s, in rational arithmetic.
bool exact_objective_met(const ContactModel& model, const ConnectionTable& gamma_base,
                         const DeformationTensor& s, const Objective& objective);

std::optional<Rational> rationalize(double value, long max_denominator);

}  // namespace ctwist::solver
