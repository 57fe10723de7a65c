#include <doctest.h>

#include "helpers.hpp"

#include "ctwist/twistor.hpp"

using namespace ctwist;
using namespace ctwist::twistor;
using testing::RatRng;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

Context flat_h5_context() {
  const ContactModel h5 = testing::heisenberg5();
  return Context::make(h5, testing::contact_base(h5));
}

Vec frame_unit(int dim, int i) { return Vec::Unit(dim, i); }

}  // namespace

TEST_CASE("partial complex structures") {
  const ContactModel h5 = testing::heisenberg5();
  const Context ctx = Context::make(h5, testing::contact_base(h5));
  const TwistorPoint p = point_at(ctx, fiber::canonical_j(2));
  fiber::FiberRng rng(8);

  SUBCASE("the Reeb lift is annihilated") {
    for (int k : {1, 2}) {
      const auto out = phi(p, TwistorTangent::horizontal_only(frame_unit(5, 4), 4), k);
      CHECK(out.horizontal.cwiseAbs().maxCoeff() == 0);
      CHECK(max_abs(out.vertical) == 0);
    }
  }
  SUBCASE("vertical sign convention") {
    const Mat v = fiber::unnormalized_vij(2, 0, 1);
    const auto t = TwistorTangent::vertical_only(v, 5);
    CHECK(max_abs(phi(p, t, 1).vertical - p.j * v) == 0);
    CHECK(max_abs(phi(p, t, 2).vertical + p.j * v) == 0);
  }
  SUBCASE("phi^3 + phi = 0 on random tangents") {
    for (int k : {1, 2})
      for (int trial = 0; trial < 20; ++trial) {
        Vec h(5);
        for (int i = 0; i < 5; ++i) h(i) = rng.uniform(-1, 1);
        Mat a(4, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-1, 1);
        const TwistorTangent t =
            make_tangent(p, h, fiber::tangent_projection({p.j}, a, ctx.omega_d));
        const auto p3 = phi(p, phi(p, phi(p, t, k), k), k);
        const auto p1 = phi(p, t, k);
        CHECK((p3.horizontal + p1.horizontal).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(max_abs(p3.vertical + p1.vertical) < 1e-10);
      }
  }
}

TEST_CASE("twistor metric") {
  const ContactModel h5 = testing::heisenberg5();
  const Context ctx = Context::make(h5, testing::contact_base(h5));
  const TwistorPoint p = point_at(ctx, fiber::canonical_j(2));
  const auto xi_h = TwistorTangent::horizontal_only(frame_unit(5, 4), 4);

  CHECK(metric_gt(p, xi_h, xi_h, 1.0) == 1.0);
  CHECK_THROWS_AS(metric_gt(p, xi_h, xi_h, 0.0), Error);

  // Taming makes horizontal D-directions positive.
  for (int i = 0; i < 4; ++i) {
    const auto t = TwistorTangent::horizontal_only(frame_unit(5, i), 4);
    CHECK(metric_gt(p, t, t, 1.0) > 0);
    CHECK(metric_gt(p, t, xi_h, 1.0) == 0.0);
  }

  // Vertical block scales linearly in t and is orthogonal to horizontals.
  const Mat v = fiber::unnormalized_vij(2, 0, 1);
  const auto tv = TwistorTangent::vertical_only(v, 5);
  const double g1 = metric_gt(p, tv, tv, 1.0);
  CHECK(g1 > 0);
  CHECK(std::abs(metric_gt(p, tv, tv, 2.5) - 2.5 * g1) < 1e-12);
  CHECK(metric_gt(p, tv, xi_h, 1.0) == 0.0);

  // Compatibility with phi on E: G(phi t1, phi t2) = G(t1, t2).
  fiber::FiberRng rng(14);
  for (int k : {1, 2})
    for (int trial = 0; trial < 10; ++trial) {
      Vec h1 = Vec::Zero(5), h2 = Vec::Zero(5);
      for (int i = 0; i < 4; ++i) {
        h1(i) = rng.uniform(-1, 1);
        h2(i) = rng.uniform(-1, 1);
      }
      Mat a(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-1, 1);
      const Mat vp = fiber::tangent_projection({p.j}, a, ctx.omega_d);
      const TwistorTangent t1 = make_tangent(p, h1, vp);
      const TwistorTangent t2 = make_tangent(p, h2, 0.5 * vp);
      CHECK(std::abs(metric_gt(p, phi(p, t1, k), phi(p, t2, k), 1.0) -
                     metric_gt(p, t1, t2, 1.0)) < 1e-9);
    }
}

TEST_CASE("curvature acting on endomorphisms") {
  SUBCASE("flat context gives zero") {
    const Context ctx = flat_h5_context();
    const Mat out = endo_curvature(ctx, frame_unit(5, 0), frame_unit(5, 4),
                                   fiber::canonical_j(2));
    CHECK(max_abs(out) == 0);
  }
  SUBCASE("identity commutes") {
    const auto ex3 = testing::example(io::ExampleId::Ex3A);
    const auto rep = repair_connection(ex3.model, *ex3.raw_connection);
    const Context ctx = Context::make(ex3.model, rep.table);
    const Mat out =
        endo_curvature(ctx, frame_unit(5, 0), frame_unit(5, 1), Mat::Identity(4, 4));
    CHECK(max_abs(out) < 1e-14);
  }
  SUBCASE("a connection with Reeb curvature acts nontrivially") {
    const auto doc = testing::example(
        io::ExampleId::Ex1, {{"a2", rat(1)}, {"c1", rat(1)}, {"d2", rat(-1)}});
    const Context ctx = Context::make(doc.model, *doc.raw_connection);
    const TwistorPoint p = point_at(ctx, fiber::canonical_j(1));
    const Mat out = endo_curvature(ctx, frame_unit(3, 0), frame_unit(3, 2), p.j);
    CHECK(max_abs(out) > 0.1);
  }
}

TEST_CASE("normality tensor on horizontal pairs") {
  SUBCASE("flat connection: identically zero, all fibre points") {
    const Context ctx = flat_h5_context();
    for (const auto& js : fiber::sample_fiber(2, 10, 3)) {
      const TwistorPoint p = point_at(ctx, ctx.transport(js.m));
      for (int k : {1, 2})
        for (int i = 0; i < 5; ++i)
          for (int j = 0; j < 5; ++j)
            CHECK(max_abs(n1_horizontal(p, frame_unit(5, i), frame_unit(5, j), k)) <
                  1e-12);
    }
  }
  SUBCASE("antisymmetry and verticality of the values") {
    const auto ex3b = testing::example(io::ExampleId::Ex3B);
    const auto rep = repair_connection(ex3b.model, *ex3b.raw_connection);
    const Context ctx = Context::make(ex3b.model, rep.table);
    fiber::FiberRng rng(6);
    for (const auto& js : fiber::sample_fiber(2, 5, 11)) {
      const TwistorPoint p = point_at(ctx, ctx.transport(js.m));
      for (int k : {1, 2})
        for (int trial = 0; trial < 5; ++trial) {
          Vec x(5), y(5);
          for (int i = 0; i < 5; ++i) {
            x(i) = rng.uniform(-1, 1);
            y(i) = rng.uniform(-1, 1);
          }
          const Mat nxy = n1_horizontal(p, x, y, k);
          const Mat nyx = n1_horizontal(p, y, x, k);
          CHECK(max_abs(nxy + nyx) < 1e-9);
          // Values are tangent to the fibre at J.
          CHECK_NOTHROW(make_tangent(p, Vec::Zero(5), nxy));
        }
    }
  }
}

TEST_CASE("normality tensor on mixed pairs") {
  const Context ctx = flat_h5_context();
  const TwistorPoint p = point_at(ctx, fiber::canonical_j(2));
  const Mat v12 = fiber::unnormalized_vij(2, 0, 1);

  SUBCASE("k = 1 vanishes") {
    for (int i = 0; i < 5; ++i)
      CHECK(n1_mixed(p, frame_unit(5, i), v12, 1, nullptr).cwiseAbs().maxCoeff() == 0);
  }
  SUBCASE("k = 2 regression value: unnormalized V12, X = E1") {
    const Vec out = n1_mixed(p, frame_unit(5, 0), v12, 2, nullptr);
    Vec expected = Vec::Zero(5);
    expected(1) = -2;  // -2 E2
    CHECK(max_abs(Mat(out - expected)) < 1e-12);
    // The orthonormal generator carries the extra 1/2.
    const auto vs = fiber::vertical_basis({p.j}, ctx.omega_d);
    const Vec half = n1_mixed(p, frame_unit(5, 0), vs[1], 2, nullptr);
    expected(1) = -1;
    CHECK(max_abs(Mat(half - expected)) < 1e-12);
  }
  SUBCASE("inputs outside the tangent space are projected and flagged") {
    bool projected = false;
    const Mat bad = v12 + Mat::Identity(4, 4);
    const Vec out = n1_mixed(p, frame_unit(5, 0), bad, 2, &projected);
    CHECK(projected);
    const Vec clean = n1_mixed(p, frame_unit(5, 0), v12, 2, nullptr);
    CHECK(max_abs(Mat(out - clean)) < 1e-10);
    projected = true;
    n1_mixed(p, frame_unit(5, 0), v12, 2, &projected);
    CHECK_FALSE(projected);
  }
}

TEST_CASE("levi form and d eta") {
  const Context ctx = flat_h5_context();
  const TwistorPoint p = point_at(ctx, fiber::canonical_j(2));
  const auto e1 = TwistorTangent::horizontal_only(frame_unit(5, 0), 4);
  const auto e3 = TwistorTangent::horizontal_only(frame_unit(5, 2), 4);

  // omega(E1, E3) = 1 on this model, so the Levi form gives -1.
  CHECK(levi_form(p, e1, e3) == -1.0);
  CHECK(d_eta(p, e1, e3) == 1.0);

  const Mat v = fiber::unnormalized_vij(2, 0, 1);
  const auto tv = TwistorTangent::vertical_only(v, 5);
  CHECK(levi_form(p, tv, tv) == 0.0);
  CHECK(levi_form(p, e1, tv) == 0.0);
  CHECK(d_eta(p, e1, tv) == 0.0);
  CHECK(d_eta(p, tv, tv) == 0.0);

  const auto xi_h = TwistorTangent::horizontal_only(frame_unit(5, 4), 4);
  CHECK_THROWS_AS(levi_form(p, xi_h, e1), Error);

  SUBCASE("phi invariance and the sign relation with d eta") {
    fiber::FiberRng rng(19);
    for (int k : {1, 2})
      for (int trial = 0; trial < 50; ++trial) {
        Vec h1 = Vec::Zero(5), h2 = Vec::Zero(5);
        for (int i = 0; i < 4; ++i) {
          h1(i) = rng.uniform(-1, 1);
          h2(i) = rng.uniform(-1, 1);
        }
        Mat a(4, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-1, 1);
        const Mat vp = fiber::tangent_projection({p.j}, a, ctx.omega_d);
        const TwistorTangent t1 = make_tangent(p, h1, vp);
        const TwistorTangent t2 = make_tangent(p, h2, -2 * vp);
        CHECK(std::abs(levi_form(p, phi(p, t1, k), phi(p, t2, k)) -
                       levi_form(p, t1, t2)) < 1e-10);
        CHECK(std::abs(d_eta(p, t1, t2) + levi_form(p, t1, t2)) < 1e-12);
      }
  }
}

TEST_CASE("horizontal normality tensor matches the complexified curvature") {
  RatRng rng(55);
  fiber::FiberRng frng(56);
  for (const auto which : {io::ExampleId::Ex2, io::ExampleId::Ex3A}) {
    const auto doc = testing::example(which);
    const ConnectionTable base = testing::contact_base(doc.model);
    for (int trial = 0; trial < 5; ++trial) {
      const ConnectionTable t =
          deform(doc.model, base, testing::random_deformation(doc.model, rng));
      const Context ctx = Context::make(doc.model, t);
      for (const auto& js : fiber::sample_fiber(2, 5, 1000 + trial)) {
        const TwistorPoint p = point_at(ctx, ctx.transport(js.m));
        for (int rep = 0; rep < 4; ++rep) {
          Vec x = Vec::Zero(5), y = Vec::Zero(5), z = Vec::Zero(5), u = Vec::Zero(5);
          for (int i = 0; i < 4; ++i) {
            x(i) = frng.uniform(-1, 1);
            y(i) = frng.uniform(-1, 1);
            z(i) = frng.uniform(-1, 1);
            u(i) = frng.uniform(-1, 1);
          }
          const double lhs = n1_dd_scalar(p, x, y, z, u);
          const double rhs = rd_j_minus(p, x, y, z, u);
          CHECK(std::abs(lhs - rhs) < 1e-7 * std::max(1.0, std::abs(rhs)));
        }
      }
    }
  }
}

TEST_CASE("normality scans agree with the exact classification") {
  SUBCASE("flat connection") {
    const auto ex2 = testing::example(io::ExampleId::Ex2);
    const auto scan = normality_scan(ex2.model, *ex2.raw_connection, 1, 25, 0);
    CHECK(scan.max_dd == 0);
    CHECK(scan.max_xi == 0);
    CHECK(scan.max_mixed == 0);
    CHECK(scan.scan_normal);
    CHECK(scan.scan_cr_integrable);
    CHECK(scan.agrees);
    const auto scan2 = normality_scan(ex2.model, *ex2.raw_connection, 2, 25, 0);
    CHECK(scan2.max_mixed > 1.0);
    CHECK_FALSE(scan2.scan_normal);
    CHECK(scan2.agrees);
  }
  SUBCASE("first printed connection is normal") {
    const auto ex3 = testing::example(io::ExampleId::Ex3A, {{"s", rat(2)}});
    const auto rep = repair_connection(ex3.model, *ex3.raw_connection);
    const auto scan = normality_scan(ex3.model, rep.table, 1, 25, 0);
    CHECK(scan.max_dd < 1e-10);
    CHECK(scan.max_xi < 1e-10);
    CHECK(scan.scan_normal);
    CHECK(scan.classify_normal);
    CHECK(scan.agrees);
  }
  SUBCASE("second printed connection fails on D x D pairs only") {
    const auto ex3b = testing::example(io::ExampleId::Ex3B);
    const auto rep = repair_connection(ex3b.model, *ex3b.raw_connection);
    const auto scan = normality_scan(ex3b.model, rep.table, 1, 25, 0);
    // Not reducible: the D x D block is the obstruction; the Reeb block
    // vanishes because the table is ad_xi-equivariant.
    CHECK(scan.max_dd > 1.0);
    CHECK(scan.max_xi == 0);
    CHECK(scan.max_mixed == 0);
    CHECK_FALSE(scan.scan_normal);
    CHECK_FALSE(scan.scan_cr_integrable);
    CHECK(scan.agrees);
  }
  SUBCASE("determinism") {
    const auto ex3b = testing::example(io::ExampleId::Ex3B);
    const auto rep = repair_connection(ex3b.model, *ex3b.raw_connection);
    const auto a = normality_scan(ex3b.model, rep.table, 1, 10, 5);
    const auto b = normality_scan(ex3b.model, rep.table, 1, 10, 5);
    CHECK(a.max_dd == b.max_dd);
    CHECK(a.witness_dd == b.witness_dd);
  }
}
