#ifndef POLYRES_HILBERT_HPP
#define POLYRES_HILBERT_HPP

#include <string>
#include <vector>

#include <polyres/rational.hpp>

namespace polyres {

// Integer-valued polynomial with exact rational coefficients, index = power.
class HilbertPolynomial {
 public:
  HilbertPolynomial() = default;  // zero
  explicit HilbertPolynomial(std::vector<Rat> coeffs);

  const std::vector<Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Rat eval(const mpz_class& n) const;

  HilbertPolynomial operator+(const HilbertPolynomial& o) const;
  HilbertPolynomial operator-(const HilbertPolynomial& o) const;
  // P(T + k)
  HilbertPolynomial shifted(long k) const;
  friend bool operator==(const HilbertPolynomial& a, const HilbertPolynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const HilbertPolynomial& a, const HilbertPolynomial& b) {
    return !(a == b);
  }
  std::string str() const;

  // Checks eval at deg+2 consecutive integers for integrality.
  bool integer_valued() const;

 private:
  std::vector<Rat> c_;  // no trailing zeros
};

// C(T + c, a) as a polynomial in T.
HilbertPolynomial binomial_poly(unsigned a, long c);

// Explicit initial values H(0..n0) together with the exact polynomial tail
// valid for every n > n0.
struct HilbertFunction {
  std::vector<mpz_class> values;
  HilbertPolynomial tail;

  mpz_class at(const mpz_class& n) const;
  friend bool operator==(const HilbertFunction& a, const HilbertFunction& b) {
    return a.values == b.values && a.tail == b.tail;
  }
};

// Hilbert function of k[X_1..X_nvars] modulo the monomial ideal generated by
// the given exponent vectors; inclusion-exclusion over subset lcms.
HilbertFunction hf_monomial(const std::vector<std::vector<unsigned>>& generators,
                            std::size_t nvars);

// t-fold iterated prefix sum H^(t).
HilbertFunction iterate_sum(const HilbertFunction& h, unsigned t);

// The unique non-increasing exponent list with
// P = sum_i C(T + a_i - (i-1), a_i).
struct ADecomposition {
  std::vector<unsigned> a;
  friend bool operator==(const ADecomposition& x, const ADecomposition& y) {
    return x.a == y.a;
  }
};

ADecomposition decompose(const HilbertPolynomial& p);
HilbertPolynomial recompose(const ADecomposition& a);

// Total order via lexicographic comparison of the decompositions, shorter
// lists padded below everything.  Returns -1, 0, or 1.
int compare(const HilbertPolynomial& p, const HilbertPolynomial& q);

// C(n + t - 1, n): the Hilbert function of t variables at degree n.
mpz_class phi(unsigned t, unsigned long n);

}  // namespace polyres

#endif
