#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ctwist/io.hpp"

namespace ctwist::testing {

// Deterministic small-rational stream for property tests.
struct RatRng {
  std::uint64_t state;
  explicit RatRng(std::uint64_t seed) : state(seed ^ 0x9E3779B97F4A7C15ull) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  long pick(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Rational rational(long max_num = 4, long max_den = 4) {
    return rat(pick(-max_num, max_num), pick(1, max_den));
  }
};

inline io::ParsedDocument example(io::ExampleId which,
                                  const std::map<std::string, Rational>& params = {},
                                  io::Ex2Stage stage = io::Ex2Stage::Flat) {
  return io::parse_model_document(io::example_document(which, params, stage));
}

inline RatVec unit(std::size_t dim, std::size_t i) {
  RatVec v(dim, Rational(0));
  v[i] = 1;
  return v;
}

// A 5-dimensional Heisenberg-type model whose adapted frame is already a
// standard symplectic basis (omega(A_i, A_{i+n}) = 1).
inline ContactModel heisenberg5() {
  LieAlgebra algebra = LieAlgebra::zero(5);
  algebra.basis_names = {"E1", "E2", "E3", "E4", "E5"};
  algebra.set_bracket(0, 2, 4, rat(-1));  // [E1,E3] = -E5
  algebra.set_bracket(1, 3, 4, rat(-1));  // [E2,E4] = -E5
  ContactForm alpha;
  alpha.coefficients = {0, 0, 0, 0, 1};
  return build_model(algebra, alpha);
}

// Random valid deformation via the free totally symmetric coefficients.
inline DeformationTensor random_deformation(const ContactModel& model, RatRng& rng,
                                            long max_num = 2, long max_den = 3) {
  SymmetricCoefficients coeff = SymmetricCoefficients::zero(2 * model.n);
  for (const auto& ms : sym3_index(2 * model.n))
    coeff.set(ms[0], ms[1], ms[2], rng.rational(max_num, max_den));
  return deformation_from_coefficients(model, coeff);
}

inline ConnectionTable contact_base(const ContactModel& model) {
  return vezzoni_correction(model, half_bracket_connection(model));
}

}  // namespace ctwist::testing
