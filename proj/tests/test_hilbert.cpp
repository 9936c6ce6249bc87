#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>
#include <vector>

#include <polyres/errors.hpp>
#include <polyres/hilbert.hpp>

using namespace polyres;

namespace {

// Brute-force staircase count: monomials of total degree n in nvars not
// divisible by any generator.
bool divisible(const std::vector<unsigned>& m, const std::vector<unsigned>& g) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] < g[i]) return false;
  return true;
}

mpz_class brute_count(const std::vector<std::vector<unsigned>>& gens,
                      std::size_t nvars, unsigned n) {
  mpz_class count = 0;
  std::vector<unsigned> m(nvars, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i,
                                                       unsigned left) {
    if (i + 1 == nvars) {
      m[i] = left;
      for (const auto& g : gens)
        if (divisible(m, g)) return;
      ++count;
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      m[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (nvars == 0) return n == 0 ? 1 : 0;
  rec(0, n);
  return count;
}

std::vector<std::vector<unsigned>> random_ideal(std::mt19937& rng,
                                                std::size_t nvars) {
  std::uniform_int_distribution<unsigned> gd(1, 4), ed(0, 8);
  std::vector<std::vector<unsigned>> gens;
  unsigned count = gd(rng);
  for (unsigned t = 0; t < count; ++t) {
    std::vector<unsigned> g(nvars, 0);
    unsigned total = 0;
    for (auto& e : g) {
      e = ed(rng) % 5;
      total += e;
    }
    if (total == 0 || total > 8) continue;  // keep proper, desk-scale ideals
    gens.push_back(g);
  }
  if (gens.empty()) gens.push_back(std::vector<unsigned>(nvars, 2));
  return gens;
}

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST_CASE("binomial polynomials and integer-valuedness") {
  HilbertPolynomial p = binomial_poly(2, 2);  // C(T+2, 2)
  CHECK(p.coeffs() == std::vector<Rat>{rat(1), rat(3, 2), rat(1, 2)});
  CHECK(p.eval(5) == 21);
  CHECK(p.integer_valued());
  CHECK(binomial_poly(0, 0) == HilbertPolynomial({rat(1)}));
  CHECK(binomial_poly(1, -1) == HilbertPolynomial({rat(-1), rat(1)}));  // T-1

  HilbertPolynomial half({rat(1, 2)});
  CHECK_FALSE(half.integer_valued());

  // Shift: p(T + 3) at 2 equals p at 5.
  CHECK(p.shifted(3).eval(2) == p.eval(5));
  CHECK((p - p).is_zero());
}

TEST_CASE("the staircase of (x^2, x*y)") {
  HilbertFunction h = hf_monomial({{2, 0}, {1, 1}}, 2);
  CHECK(h.at(0) == 1);
  CHECK(h.at(1) == 2);
  CHECK(h.at(2) == 1);
  CHECK(h.at(3) == 1);
  CHECK(h.at(40) == 1);
  CHECK(h.tail == HilbertPolynomial({rat(1)}));
  CHECK(decompose(h.tail) == ADecomposition{{0}});
}

TEST_CASE("named decompositions") {
  CHECK(decompose(HilbertPolynomial({rat(1), rat(1)})) == ADecomposition{{1}});
  CHECK(decompose(HilbertPolynomial({rat(2)})) == ADecomposition{{0, 0}});
  CHECK(decompose(HilbertPolynomial({rat(1), rat(2)})) ==
        ADecomposition{{1, 1}});
  CHECK(recompose(ADecomposition{{1, 1}}) ==
        HilbertPolynomial({rat(1), rat(2)}));
  CHECK(recompose(ADecomposition{}).is_zero());
  CHECK_THROWS_AS((void)decompose(HilbertPolynomial()), NotAHilbertPolynomial);

  // T^2 is not a Hilbert polynomial.
  CHECK_THROWS_AS((void)decompose(HilbertPolynomial({rat(0), rat(0), rat(1)})),
                  NotAHilbertPolynomial);
}

TEST_CASE("comparison order on small polynomials") {
  HilbertPolynomial one({rat(1)});
  HilbertPolynomial two({rat(2)});
  HilbertPolynomial line({rat(1), rat(1)});
  HilbertPolynomial steep({rat(1), rat(2)});
  CHECK(compare(one, two) == -1);
  CHECK(compare(two, one) == 1);
  CHECK(compare(one, one) == 0);
  CHECK(compare(two, line) == -1);
  CHECK(compare(line, steep) == -1);
  CHECK(compare(HilbertPolynomial(), one) == -1);
}

TEST_CASE("phi matches the closed-form binomial for t <= 4, n <= 20") {
  for (unsigned t = 1; t <= 4; ++t)
    for (unsigned long n = 0; n <= 20; ++n)
      CHECK(phi(t, n) == binom(n + t - 1, n));
}

TEST_CASE("iterated prefix sums") {
  HilbertFunction h = hf_monomial({{2, 0}, {1, 1}}, 2);
  HilbertFunction s1 = iterate_sum(h, 1);
  for (unsigned long n = 0; n <= 30; ++n) {
    mpz_class acc = 0;
    for (unsigned long k = 0; k <= n; ++k) acc += h.at(k);
    CHECK(s1.at(n) == acc);
  }
  // Two single sums equal one double sum.
  HilbertFunction s2 = iterate_sum(h, 2);
  HilbertFunction s11 = iterate_sum(s1, 1);
  for (unsigned long n = 0; n <= 30; ++n) CHECK(s2.at(n) == s11.at(n));
  // Summing the empty-ideal function stacks up binomials.
  HilbertFunction full = hf_monomial({}, 1);
  CHECK(iterate_sum(full, 3).at(10) == phi(4, 10));
}

TEST_CASE("random monomial ideals: staircase oracle and round-trip") {
  std::mt19937 rng(20260823);
  std::uniform_int_distribution<std::size_t> vd(1, 4);
  std::vector<HilbertPolynomial> tails;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t nvars = vd(rng);
    auto gens = random_ideal(rng, nvars);
    HilbertFunction h = hf_monomial(gens, nvars);
    CAPTURE(trial);

    for (unsigned n = 0; n <= 15; ++n) CHECK(h.at(n) == brute_count(gens, nvars, n));
    CHECK(h.at(50) == brute_count(gens, nvars, 50));
    CHECK(h.tail.integer_valued());

    if (!h.tail.is_zero()) {
      ADecomposition a = decompose(h.tail);
      CHECK(recompose(a) == h.tail);
      for (std::size_t i = 1; i < a.a.size(); ++i) CHECK(a.a[i - 1] >= a.a[i]);
    }
    tails.push_back(h.tail);
  }

  // The total order agrees with pointwise comparison far out.
  for (std::size_t i = 1; i < tails.size(); ++i) {
    const HilbertPolynomial& p = tails[i - 1];
    const HilbertPolynomial& q = tails[i];
    int c = compare(p, q);
    if (c == 0) {
      CHECK(p == q);
    } else if (c < 0) {
      CHECK(p.eval(50) < q.eval(50));
    } else {
      CHECK(p.eval(50) > q.eval(50));
    }
  }
}

TEST_CASE("no infinite descent below a fixed decomposition") {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<unsigned> ad(0, 9), ld(1, 20);
  for (int walk = 0; walk < 25; ++walk) {
    // Random non-increasing start of length <= 20.
    std::vector<unsigned> a(ld(rng));
    unsigned cur = ad(rng);
    for (auto& x : a) {
      x = cur;
      if (cur > 0 && ad(rng) % 3 == 0) --cur;
    }
    HilbertPolynomial p = recompose(ADecomposition{a});
    int steps = 0;
    while (!a.empty()) {
      REQUIRE(steps < 100000);
      // Random strict descent: truncate, or decrement and clamp.
      std::uniform_int_distribution<std::size_t> idx(0, a.size() - 1);
      std::size_t i = idx(rng);
      if (a[i] == 0 || ad(rng) % 2 == 0) {
        a.resize(i);
      } else {
        --a[i];
        for (std::size_t j = i + 1; j < a.size(); ++j)
          a[j] = std::min(a[j], a[i]);
      }
      HilbertPolynomial q = recompose(ADecomposition{a});
      CHECK(compare(q, p) == -1);
      p = q;
      ++steps;
    }
  }
}
