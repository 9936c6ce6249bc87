#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <polyres/errors.hpp>
#include <polyres/label.hpp>

#include "helpers.hpp"

using namespace polyres;
using namespace polyres::testing;

namespace {
const char* kSurface = "y^3 + y*u1^36*u2^36 + u1^2*u2*(u1+u2)^12";
}

TEST_CASE("characteristic polyhedron of the degree-3 surface over F_3") {
  Label L = label1(frame_f3(), kSurface);
  CHECK(L.orders() == std::vector<unsigned>{3});
  FSubset d = char_polyhedron(L);
  CHECK(d.vertices() ==
        std::vector<QPoint>{qp("2/3", "13/3"), qp("14/3", "1/3")});
  CHECK(delta_invariant(d) == 5);

  Invariants2 iv = invariants2(d);
  CHECK(iv.alpha == rat("2/3"));
  CHECK(iv.beta == rat("13/3"));
  CHECK(iv.gamma_minus == rat("1/3"));

  // (u1+u2)^12 = (u1^3+u2^3)^4 in characteristic 3 and the middle binomial
  // coefficient C(4,2) = 6 vanishes, so the face carries four points, with a
  // gap at (8/3, 7/3).
  std::vector<QPoint> ess = essential_points(L);
  CHECK(ess == std::vector<QPoint>{qp("2/3", "13/3"), qp("5/3", "10/3"),
                                   qp("11/3", "4/3"), qp("14/3", "1/3")});
}

TEST_CASE("the same equation over Q has a denser delta face") {
  Label L = label1(frame_q2(), kSurface);
  FSubset d = char_polyhedron(L);
  CHECK(d.vertices() ==
        std::vector<QPoint>{qp("2/3", "13/3"), qp("14/3", "1/3")});
  // All thirteen face points survive in characteristic zero.
  CHECK(essential_points(L).size() == 13);
}

TEST_CASE("small polyhedra and the empty case") {
  FramePtr q2 = frame_q2();
  CHECK(char_polyhedron(label1(q2, "y^2 + u1^3")).vertices() ==
        std::vector<QPoint>{qp("3/2", "0")});
  CHECK(char_polyhedron(label1(q2, "y^2 + y^5")).empty());
  CHECK(char_polyhedron(label1(q2, "y^2 + y*u1*u2^3")).vertices() ==
        std::vector<QPoint>{qp("1", "3")});

  // Two generators pool their points.
  Label two(q2, {poly(q2, "y^2 + u1^3"), poly(q2, "y + u2^2")});
  CHECK(two.orders() == std::vector<unsigned>{2, 1});
  CHECK(char_polyhedron(two).vertices() ==
        std::vector<QPoint>{qp("0", "2"), qp("3/2", "0")});

  CHECK_THROWS_AS(Label(q2, {Polynomial::zero(q2)}), BadParameters);
  CHECK_THROWS_AS(Label(q2, {poly(q2, "u1^2")}), Error);  // no order mod <u>
}

TEST_CASE("boundary-extended polyhedron") {
  FramePtr q2 = frame_q2();
  Polynomial f = poly(q2, "y^3 + u1^2*u2^2");
  Polynomial eta = poly(q2, "y + u1^2");

  Label bare(q2, {f});
  CHECK(char_polyhedron(bare).vertices() ==
        std::vector<QPoint>{qp("2/3", "2/3")});

  Label with_old(q2, {f}, {{eta, "E1", true}});
  FSubset bd = boundary_polyhedron(with_old);
  CHECK(bd.vertices() == std::vector<QPoint>{qp("2/3", "2/3"), qp("2", "0")});
  Invariants2 iv = boundary_invariants2(with_old);
  CHECK(iv.alpha == rat("2/3"));
  CHECK(iv.beta == rat("2/3"));
  CHECK(iv.delta == rat("4/3"));
  CHECK(iv.eps == 0);
  CHECK(iv.zeta == 2);

  // New components are not part of the ledger polyhedron.
  Label with_new(q2, {f}, {{eta, "E1", false}});
  CHECK(boundary_polyhedron(with_new) == char_polyhedron(bare));

  // An old component inside <u> carries no polyhedron.
  Label bad(q2, {f}, {{poly(q2, "u1"), "E1", true}});
  CHECK_THROWS_AS((void)boundary_polyhedron(bad), BoundaryInUIdeal);
  Label fine(q2, {f}, {{poly(q2, "u1"), "E1", false}});
  CHECK(boundary_polyhedron(fine) == char_polyhedron(bare));

  CHECK_THROWS_AS(Label(q2, {f}, {{poly(q2, "y^2 + u1^3"), "E1", true}}),
                  BadParameters);  // multiplicity 2
}

TEST_CASE("nu*: greedy standard-base degrees") {
  FramePtr q2 = frame_q2();
  auto P = [&](const char* s) { return poly(q2, s); };

  CHECK(nu_star({P("y^2"), P("y^3")}) == NuStar{{2}});
  CHECK(nu_star({P("u2^3"), P("u1^2"), P("u1*u2")}) == NuStar{{2, 2, 3}});
  CHECK(nu_star({P("y^2"), P("y^2 + u1^2")}) == NuStar{{2, 2}});
  CHECK(nu_star({P("y^2"), P("u1*y^2")}) == NuStar{{2}});
  CHECK(nu_star({P("y"), P("u1^5 + y*u2^4")}) == NuStar{{1, 5}});
  CHECK(nu_star({}) == NuStar{});
  CHECK_THROWS_AS((void)nu_star({P("y^2 + u1")}), BadParameters);
}

TEST_CASE("directrix in characteristic zero") {
  FramePtr q2 = frame_q2();
  FieldPtr Q = FieldSpec::rationals();
  auto s = [&](long v) { return Scalar::from_int(Q, v); };

  Subspace t1 = directrix(poly(q2, "y^2"));
  CHECK(t1.basis == std::vector<std::vector<Scalar>>{{s(1), s(0), s(0)}});

  CHECK(directrix(poly(q2, "y^2 + u1*u2")).dim() == 3);
  CHECK(directrix(poly(q2, "y^3 + u1^3")).dim() == 2);

  Subspace sq = directrix(poly(q2, "y^2 + 2*y*u1 + u1^2"));
  CHECK(sq.basis == std::vector<std::vector<Scalar>>{{s(1), s(1), s(0)}});
}

TEST_CASE("directrix in characteristic 3 sees the Frobenius line") {
  FramePtr f3 = frame_f3();
  FieldPtr F3 = FieldSpec::prime(3);
  auto s = [&](long v) { return Scalar::from_int(F3, v); };

  // y^3 + u1^3 = (y + u1)^3: one-dimensional directrix.
  Subspace t = directrix(poly(f3, "y^3 + u1^3"));
  CHECK(t.basis == std::vector<std::vector<Scalar>>{{s(1), s(1), s(0)}});

  CHECK(directrix(poly(f3, "y^2 + u1*u2")).dim() == 3);
  CHECK(directrix(poly(f3, "y^3 + u1^2*u2")).dim() == 3);
  CHECK(directrix(poly(f3, "y^3")).basis ==
        std::vector<std::vector<Scalar>>{{s(1), s(0), s(0)}});
}

TEST_CASE("strict admissibility") {
  FramePtr q2 = frame_q2();
  CHECK(check_strictly_admissible(label1(q2, "y^2 + u1^3")));
  CHECK_FALSE(check_strictly_admissible(label1(q2, "y^2 + u1^2")));

  FramePtr f3 = frame_f3();
  CHECK(check_strictly_admissible(label1(f3, "y^3 + u1^2*u2^2")));
  CHECK_FALSE(check_strictly_admissible(label1(f3, "y^3 + u1^3")));
  CHECK(check_strictly_admissible(label1(f3, kSurface)));
}

TEST_CASE("order-theoretic delta tests match the polyhedron") {
  FramePtr q2 = frame_q2();
  struct Case {
    const char* f;
    bool ge1, gt1, eq1;
  } cases[] = {
      {"y^2 + u1^3", true, true, false},
      {"y^2 + u1*u2", true, false, true},
      {"y^2 + u1", false, false, false},
      {"y^3 + y*u1*u2 + u1^4", true, false, true},  // mixed term on delta = 1
      {"y^2 + y*u1^2 + u1^5", true, true, false},
  };
  for (const auto& c : cases) {
    CAPTURE(c.f);
    Label L = label1(q2, c.f);
    DeltaCriteria dc = delta_criteria(L);
    CHECK(dc.delta_ge_1 == c.ge1);
    CHECK(dc.delta_gt_1 == c.gt1);
    CHECK(dc.delta_eq_1 == c.eq1);
  }
}

TEST_CASE("random labels: delta tests agree with the computed delta") {
  std::mt19937 rng(97531);
  FramePtr f3 = frame_f3();
  FramePtr q2 = frame_q2();
  for (int trial = 0; trial < 100; ++trial) {
    Label L = random_label(rng, trial % 2 ? f3 : q2);
    FSubset d = char_polyhedron(L);
    ExtRat delta = delta_or_infinity(d);
    DeltaCriteria dc = delta_criteria(L);
    CAPTURE(L.generators()[0].str());
    CHECK(dc.delta_ge_1 == (delta >= ExtRat(Rat(1))));
    CHECK(dc.delta_gt_1 == (delta > ExtRat(Rat(1))));
    CHECK(dc.delta_eq_1 == (delta == ExtRat(Rat(1))));
  }
}
