#include <doctest.h>

#include "helpers.hpp"

using namespace ctwist;
using testing::RatRng;
using testing::unit;

namespace {

std::map<std::string, Rational> family_params(RatRng& rng) {
  // The four free parameters of the 3-dimensional family; the rest are
  // forced by the parallel-omega and torsion constraints.
  const Rational a2 = rng.rational(), b1 = rng.rational(), c2 = rng.rational(),
                 d1 = rng.rational();
  return {{"a1", -d1}, {"b1", b1}, {"c1", a2}, {"d1", d1},
          {"a2", a2},  {"b2", d1}, {"c2", c2}, {"d2", -a2}};
}

}  // namespace

TEST_CASE("half-bracket connection on the worked example") {
  for (const Rational& s : {rat(1), rat(2), rat(-1, 2)}) {
    const auto ex2 = testing::example(io::ExampleId::Ex2, {{"s", s}});
    const ConnectionTable prime = half_bracket_connection(ex2.model);
    // nabla'_{A1}A2 = (1/2)(s A5 - s A5) = 0.
    CHECK(linalg::is_zero(prime.entry(0, 1)));
    // nabla'_{A1}A4 = 1/2 A1, nabla'_{A4}A1 = -1/2 A1.
    CHECK(prime.at(0, 3, 0) == rat(1, 2));
    CHECK(prime.at(3, 0, 0) == rat(-1, 2));

    // The omega defect: N(A1,A2) = N(A2,A1) = 1/2 A3, N(A1,A4) = -1/2 A1,
    // N(A2,A4) = 1/2 A2, everything else zero.
    const auto n = omega_defect_tensor(ex2.model, prime);
    CHECK(n[0 * 4 + 1] == RatVec{0, 0, rat(1, 2), 0});
    CHECK(n[1 * 4 + 0] == RatVec{0, 0, rat(1, 2), 0});
    CHECK(n[0 * 4 + 3] == RatVec{rat(-1, 2), 0, 0, 0});
    CHECK(n[1 * 4 + 3] == RatVec{0, rat(1, 2), 0, 0});
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if ((i == 0 && j == 1) || (i == 1 && j == 0) || (i == 0 && j == 3) ||
            (i == 1 && j == 3))
          continue;
        CHECK(linalg::is_zero(n[i * 4 + j]));
      }
    // (nabla'_{A1} omega)(A2, A4) = omega(N(A1,A2), A4) = -s/2, nonzero.
    Rational defect = 0;
    for (std::size_t m = 0; m < 4; ++m) defect += n[1][m] * ex2.model.omega[m][3];
    CHECK(defect == -s / 2);

    const AxiomReport report = verify_axioms(ex2.model, prime);
    CHECK(report.distribution.pass);
    CHECK(report.reeb_derivation.pass);
    CHECK(report.reeb_parallel.pass);
    CHECK(report.torsion.pass);
    CHECK_FALSE(report.omega_parallel_d.pass);
  }
}

TEST_CASE("half-bracket connection is zero when D-brackets point along xi") {
  const ContactModel h5 = testing::heisenberg5();
  const ConnectionTable prime = half_bracket_connection(h5);
  CHECK(linalg::is_zero(RatMat{prime.gamma}));
}

TEST_CASE("corrected connection reproduces the printed table") {
  for (const Rational& s : {rat(1), rat(2), rat(-1, 2)}) {
    const auto ex2 = testing::example(io::ExampleId::Ex2, {{"s", s}}, io::Ex2Stage::Tilde);
    const ConnectionTable tilde =
        vezzoni_correction(ex2.model, half_bracket_connection(ex2.model));
    CHECK(tilde == *ex2.raw_connection);
    CHECK(verify_axioms(ex2.model, tilde).all_pass());

    // A contact connection is a fixed point of the correction.
    CHECK(vezzoni_correction(ex2.model, tilde) == tilde);
  }
}

TEST_CASE("corrected connection is contact on every example and perturbed forms") {
  RatRng rng(23);
  int checked = 0;
  for (const auto which :
       {io::ExampleId::Ex1, io::ExampleId::Ex2, io::ExampleId::Ex3A}) {
    const auto doc = testing::example(which);
    CHECK(verify_axioms(doc.model, testing::contact_base(doc.model)).all_pass());

    int accepted = 0;
    while (accepted < 34) {
      ContactForm alpha = doc.model.alpha;
      for (auto& c : alpha.coefficients) c += rng.rational(1, 5) / 7;
      ContactModel perturbed;
      try {
        perturbed = build_model(doc.model.algebra, alpha);
      } catch (const Error&) {
        continue;  // left the contact locus; resample
      }
      ++accepted;
      ++checked;
      CHECK(verify_axioms(perturbed, testing::contact_base(perturbed)).all_pass());
    }
  }
  CHECK(checked == 102);
}

TEST_CASE("axiom verdicts on the three-dimensional family") {
  RatRng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto doc = testing::example(io::ExampleId::Ex1, family_params(rng));
    REQUIRE(doc.raw_connection);
    CHECK(verify_axioms(doc.model, *doc.raw_connection).all_pass());
  }
  // a1 = d1 = 1 breaks the parallel-omega constraint.
  const auto bad = testing::example(io::ExampleId::Ex1, {{"a1", rat(1)}, {"d1", rat(1)}});
  const AxiomReport report = verify_axioms(bad.model, *bad.raw_connection);
  CHECK_FALSE(report.omega_parallel_d.pass);
}

TEST_CASE("deformations") {
  const auto ex2 = testing::example(io::ExampleId::Ex2, {}, io::Ex2Stage::Tilde);
  const ConnectionTable tilde = *ex2.raw_connection;

  SUBCASE("zero deformation is the identity") {
    CHECK(deform(ex2.model, tilde, DeformationTensor::zero(4)) == tilde);
  }
  SUBCASE("the printed deformation flattens the corrected connection") {
    const auto flat_doc = testing::example(io::ExampleId::Ex2, {}, io::Ex2Stage::Flat);
    const DeformationTensor s = io::example2_deformation(ex2.model);
    CHECK(deform(ex2.model, tilde, s) == *flat_doc.raw_connection);
  }
  SUBCASE("random deformations stay contact, and the action is affine") {
    RatRng rng(99);
    const auto ex3 = testing::example(io::ExampleId::Ex3A, {{"s", rat(2)}});
    const ConnectionTable base = testing::contact_base(ex3.model);
    for (int trial = 0; trial < 25; ++trial) {
      const DeformationTensor s1 = testing::random_deformation(ex3.model, rng);
      const DeformationTensor s2 = testing::random_deformation(ex3.model, rng);
      const ConnectionTable once = deform(ex3.model, base, s1);
      CHECK(verify_axioms(ex3.model, once).all_pass());
      DeformationTensor sum = s1;
      for (std::size_t i = 0; i < sum.s.size(); ++i) sum.s[i] += s2.s[i];
      CHECK(deform(ex3.model, once, s2) == deform(ex3.model, base, sum));
      // Faithful: recovering the deformation from the difference.
      const DeformationTensor back = difference(ex3.model, once, base);
      CHECK(back.s == s1.s);
    }
  }
  SUBCASE("invalid deformations are rejected with a witness") {
    DeformationTensor bad = DeformationTensor::zero(4);
    bad.at(0, 1, 0) = 1;  // not symmetric in the first two slots
    CHECK_THROWS_AS(deform(ex2.model, tilde, bad), Error);
    DeformationTensor bad2 = DeformationTensor::zero(4);
    // Symmetric in (i,j) but omega(S(.,.),.) fails total symmetry:
    // omega(S(A1,A1), A4) != 0 while S(A1,A4) = 0.
    bad2.at(0, 0, 2) = 1;
    CHECK_THROWS_AS(validate_deformation(ex2.model, bad2), Error);
  }
}

TEST_CASE("difference of two contact connections is an admissible deformation") {
  const auto ex3 = testing::example(io::ExampleId::Ex3A);
  const auto repaired = repair_connection(ex3.model, *ex3.raw_connection);
  const ConnectionTable base = testing::contact_base(ex3.model);
  const DeformationTensor s = difference(ex3.model, repaired.table, base);
  validate_deformation(ex3.model, s);
  CHECK(deform(ex3.model, base, s) == repaired.table);
}

TEST_CASE("repair leaves valid tables alone") {
  const auto ex2 = testing::example(io::ExampleId::Ex2);
  const auto result = repair_connection(ex2.model, *ex2.raw_connection);
  CHECK(result.ledger.empty());
  CHECK(result.table == *ex2.raw_connection);
}

TEST_CASE("repair of the first printed table") {
  SUBCASE("at s = 1 the printed table is already consistent") {
    const auto ex3 = testing::example(io::ExampleId::Ex3A, {{"s", rat(1)}});
    const auto result = repair_connection(ex3.model, *ex3.raw_connection);
    CHECK(result.ledger.empty());
  }
  SUBCASE("for other s the (A3,A1) slot is forced to 1/2 A1") {
    for (const Rational& s : {rat(2), rat(-1, 2), rat(3)}) {
      const auto ex3 = testing::example(io::ExampleId::Ex3A, {{"s", s}});
      const auto result = repair_connection(ex3.model, *ex3.raw_connection);
      REQUIRE(result.ledger.size() == 1);
      CHECK(result.ledger[0].i == 2);
      CHECK(result.ledger[0].j == 0);
      CHECK(result.ledger[0].kind == "d-block");
      CHECK(result.table.at(2, 0, 0) == rat(1, 2));
      CHECK(verify_axioms(ex3.model, result.table).all_pass());
    }
  }
}

TEST_CASE("repair of the second printed table") {
  for (const Rational& s : {rat(1), rat(2)}) {
    const auto ex3b = testing::example(io::ExampleId::Ex3B, {{"s", s}});
    const auto result = repair_connection(ex3b.model, *ex3b.raw_connection);
    CHECK(verify_axioms(ex3b.model, result.table).all_pass());

    // Exactly three slots change: (A1,A2), (A2,A3), (A3,A4).
    REQUIRE(result.ledger.size() == 3);
    CHECK(result.ledger[0].i == 0);
    CHECK(result.ledger[0].j == 1);
    CHECK(result.ledger[1].i == 1);
    CHECK(result.ledger[1].j == 2);
    CHECK(result.ledger[2].i == 2);
    CHECK(result.ledger[2].j == 3);
    // Repaired values.
    CHECK(result.table.entry(0, 1) == RatVec{0, 0, -1 / (3 * s), 2 / (3 * s), 0});
    CHECK(result.table.entry(1, 2) == RatVec{0, rat(-1, 3), 0, 0, 0});
    CHECK(result.table.entry(2, 3) == RatVec{0, 0, 0, rat(1, 3), 0});

    // The repaired table is exactly the corrected half-bracket connection.
    CHECK(result.table == testing::contact_base(ex3b.model));
  }
}

TEST_CASE("repair recovers an isolated perturbation") {
  const auto ex2 = testing::example(io::ExampleId::Ex2);
  ConnectionTable perturbed = *ex2.raw_connection;
  perturbed.at(0, 1, 0) += 1;
  const auto result = repair_connection(ex2.model, perturbed);
  CHECK(result.table == *ex2.raw_connection);
  REQUIRE(result.ledger.size() == 1);
  CHECK(result.ledger[0].i == 0);
  CHECK(result.ledger[0].j == 1);
}

TEST_CASE("repair categorizes forced xi entries") {
  const auto ex2 = testing::example(io::ExampleId::Ex2);
  ConnectionTable perturbed = *ex2.raw_connection;
  perturbed.at(4, 0, 1) = 7;  // xi row must be ad_xi (zero here)
  perturbed.at(1, 4, 2) = 5;  // xi column must vanish
  perturbed.at(3, 0, 4) = 3;  // D-slot values must stay in D
  const auto result = repair_connection(ex2.model, perturbed);
  CHECK(result.table == *ex2.raw_connection);
  REQUIRE(result.ledger.size() == 3);
  auto kind_of = [&result](std::size_t i, std::size_t j) {
    for (const auto& entry : result.ledger)
      if (entry.i == i && entry.j == j) return entry.kind;
    return std::string("missing");
  };
  CHECK(kind_of(4, 0) == "xi-row");
  CHECK(kind_of(1, 4) == "xi-column");
  CHECK(kind_of(3, 0) == "xi-component");
}
