#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polyres/errors.hpp>
#include <polyres/field.hpp>
#include <polyres/linalg.hpp>
#include <polyres/poly.hpp>

#include "helpers.hpp"

using namespace polyres;
using namespace polyres::testing;

TEST_CASE("rational scalars: canonical form and arithmetic") {
  FieldPtr Q = FieldSpec::rationals();
  Scalar half = Scalar::from_rat(Q, rat("2/4"));
  CHECK(half.str() == "1/2");
  Scalar third = Scalar::from_rat(Q, rat("1/3"));
  CHECK((half + third).rat_value() == rat("5/6"));
  CHECK((half * third).rat_value() == rat("1/6"));
  CHECK((half - half).is_zero());
  CHECK(half.inverse().rat_value() == 2);
  CHECK(Scalar::from_int(Q, 3).pow(-2).rat_value() == rat("1/9"));
  CHECK((-third).rat_value() == rat("-1/3"));
}

TEST_CASE("rational scalars: exact n-th roots") {
  FieldPtr Q = FieldSpec::rationals();
  Scalar out;
  CHECK(Scalar::from_int(Q, 8).nth_root(3, out));
  CHECK(out.rat_value() == 2);
  CHECK(Scalar::from_rat(Q, rat("4/9")).nth_root(2, out));
  CHECK(out.rat_value() == rat("2/3"));
  CHECK(Scalar::from_int(Q, -27).nth_root(3, out));
  CHECK(out.rat_value() == -3);
  CHECK_FALSE(Scalar::from_int(Q, 2).nth_root(2, out));
  CHECK_FALSE(Scalar::from_int(Q, -4).nth_root(2, out));
  CHECK(Scalar::from_rat(Q, rat("-8/125")).nth_root(3, out));
  CHECK(out.rat_value() == rat("-2/5"));
}

TEST_CASE("prime field F_3 arithmetic") {
  FieldPtr F3 = FieldSpec::prime(3);
  CHECK(Scalar::from_int(F3, 5) == Scalar::from_int(F3, 2));
  CHECK(Scalar::from_int(F3, 2).inverse() == Scalar::from_int(F3, 2));
  CHECK(Scalar::from_int(F3, 2).pow(4) == Scalar::one(F3));
  CHECK(Scalar::from_int(F3, -1) == Scalar::from_int(F3, 2));
  // Frobenius: cube roots are total and unique in characteristic 3.
  for (long v = 0; v < 3; ++v) {
    Scalar s = Scalar::from_int(F3, v), r;
    CHECK(s.nth_root(3, r));
    CHECK(r.pow(3) == s);
  }
  Scalar r;
  CHECK(Scalar::from_int(F3, 2).nth_root(3, r));
  CHECK(r == Scalar::from_int(F3, 2));  // 2^3 = 8 = 2 mod 3
}

TEST_CASE("extension field F_9 = F_3[T]/(T^2+1)") {
  FieldPtr F9 = FieldSpec::extension(3, {1, 0, 1});
  CHECK(F9->degree() == 2);
  Scalar th = theta_of(F9);
  CHECK(th * th == Scalar::from_int(F9, -1));
  CHECK(field_elements(F9).size() == 9);
  for (const Scalar& s : field_elements(F9)) {
    if (s.is_zero()) continue;
    CHECK(s * s.inverse() == Scalar::one(F9));
    Scalar r;
    CHECK(s.nth_root(3, r));  // Frobenius is onto
    CHECK(r.pow(3) == s);
  }
  // theta has multiplicative order 4, hence is a square in the cyclic group
  // of order 8.
  Scalar sq;
  CHECK(th.nth_root(2, sq));
  CHECK(sq * sq == th);
  CHECK(embed(Scalar::from_int(FieldSpec::prime(3), 2), F9) ==
        Scalar::from_int(F9, 2));
}

TEST_CASE("irreducibility tests mod p") {
  CHECK(is_irreducible_mod_p(3, {1, 0, 1}));        // T^2+1, no root mod 3
  CHECK_FALSE(is_irreducible_mod_p(5, {1, 0, 1}));  // 2^2 = -1 mod 5
  CHECK(is_irreducible_mod_p(2, {1, 1, 1}));        // T^2+T+1
  CHECK_FALSE(is_irreducible_mod_p(2, {1, 0, 1}));  // (T+1)^2
  CHECK(is_irreducible_mod_p(3, {1, 2, 0, 1}));     // T^3+2T+1 has no root mod 3
  CHECK_THROWS_AS((void)FieldSpec::extension(5, {1, 0, 1}), ReducibleModulus);
}

TEST_CASE("univariate factorization over F_3") {
  FieldPtr F3 = FieldSpec::prime(3);
  auto c = [&](long v) { return Scalar::from_int(F3, v); };
  // (T+1)^2 (T+2) = T^3 + T^2 + 2T + 2 mod 3.
  auto fac = factor_univariate({c(2), c(2), c(1), c(1)});
  REQUIRE(fac.size() == 2);
  // Sort by root for a deterministic check.
  std::sort(fac.begin(), fac.end(), [](const UniFactor& a, const UniFactor& b) {
    return a.factor[0] < b.factor[0];
  });
  CHECK(fac[0].factor == std::vector<Scalar>{c(1), c(1)});
  CHECK(fac[0].multiplicity == 2);
  CHECK(fac[1].factor == std::vector<Scalar>{c(2), c(1)});
  CHECK(fac[1].multiplicity == 1);

  // T^2+1 is irreducible over F_3: one quadratic factor.
  auto irr = factor_univariate({c(1), c(0), c(1)});
  REQUIRE(irr.size() == 1);
  CHECK(irr[0].factor.size() == 3);
  CHECK(irr[0].multiplicity == 1);
}

TEST_CASE("univariate factorization over F_9 splits T^2+1") {
  FieldPtr F9 = FieldSpec::extension(3, {1, 0, 1});
  auto fac = factor_univariate(
      {Scalar::one(F9), Scalar::zero(F9), Scalar::one(F9)});
  REQUIRE(fac.size() == 2);
  for (const auto& f : fac) {
    REQUIRE(f.factor.size() == 2);  // linear
    CHECK(f.factor[1].is_one());
    CHECK(f.multiplicity == 1);
    Scalar root = -f.factor[0];
    CHECK(root * root == Scalar::from_int(F9, -1));
  }
}

TEST_CASE("polynomials: Frobenius, arithmetic, substitution") {
  FramePtr f3 = frame_f3();
  CHECK(poly(f3, "(y + u1)^3") == poly(f3, "y^3 + u1^3"));
  CHECK(poly(f3, "(u1 + u2)^2 - u1^2 - u2^2") == poly(f3, "2*u1*u2"));

  Polynomial f = poly(f3, "y^2 + u1^3");
  std::map<std::string, Polynomial> im;
  im["y"] = poly(f3, "u1*y");
  Polynomial g = substitute(f, im, f3);
  CHECK(g == poly(f3, "u1^2*y^2 + u1^3"));
  CHECK(divide_u_power(g, 0, 2) == poly(f3, "y^2 + u1"));
  CHECK_THROWS_AS((void)divide_u_power(g, 0, 3), NonDivisible);
}

TEST_CASE("polynomials: orders and initial forms") {
  FramePtr q2 = frame_q2();
  Polynomial f = poly(q2, "y^2 + y*u1*u2 + u1^3 + u1*u2^4");
  CHECK(order_mod_u_finite(f) == 2);
  CHECK(multiplicity(f) == ExtRat(Rat(2)));
  CHECK(order_along_curve(f, 0) == ExtRat(Rat(1)));  // u1*u2^4 term
  CHECK(order_along_curve(f, 1) == ExtRat(Rat(0)));  // u1^3 term
  CHECK(initial_zero(f) == poly(q2, "y^2"));
  CHECK(initial_at_vertex(f, {rat(3, 2), rat(0)}) == poly(q2, "y^2 + u1^3"));
  CHECK(initial_origin(f) == poly(q2, "y^2"));

  std::vector<QPoint> pts = polyhedron_points(f);
  std::sort(pts.begin(), pts.end());
  std::vector<QPoint> want = {qp("1/2", "2"), qp("1", "1"), qp("3/2", "0")};
  std::sort(want.begin(), want.end());
  CHECK(pts == want);

  CHECK(order_mod_u(poly(q2, "y*u1")) == ExtRat::infinity());
  CHECK(multiplicity(Polynomial::zero(q2)) == ExtRat::infinity());
}

TEST_CASE("row reduction over Q: rank, pivots, span membership") {
  FieldPtr Q = FieldSpec::rationals();
  auto row = [&](long a, long b, long c) {
    return std::vector<Scalar>{Scalar::from_int(Q, a), Scalar::from_int(Q, b),
                               Scalar::from_int(Q, c)};
  };
  Echelon e = row_reduce({row(1, 2, 3), row(2, 4, 6), row(0, 1, 1)});
  CHECK(e.rows.size() == 2);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.rows[0] == row(1, 0, 1));  // fully reduced
  CHECK(e.rows[1] == row(0, 1, 1));

  CHECK(in_row_span({row(1, 2, 3), row(0, 1, 1)}, row(1, 3, 4)));
  CHECK_FALSE(in_row_span({row(1, 2, 3), row(0, 1, 1)}, row(0, 0, 1)));
  CHECK(reduce_against(e, row(1, 1, 2)) == row(0, 0, 0));
}

TEST_CASE("row reduction over F_2 differs from Q where 2 = 0") {
  FieldPtr F2 = FieldSpec::prime(2);
  auto row = [&](long a, long b) {
    return std::vector<Scalar>{Scalar::from_int(F2, a), Scalar::from_int(F2, b)};
  };
  // (1,1) and (1,-1) are dependent mod 2 but independent over Q.
  Echelon e = row_reduce({row(1, 1), row(1, -1)});
  CHECK(e.rows.size() == 1);
}
