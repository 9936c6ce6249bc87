#ifndef POLYRES_FIELD_HPP
#define POLYRES_FIELD_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <polyres/rational.hpp>

namespace polyres {

// Coefficient field: Q, F_p, or a simple extension F_p[theta]/(phi(theta))
// with phi monic irreducible of degree 2..8.
class FieldSpec {
 public:
  enum class Kind { Rationals, Prime, Extension };

  static std::shared_ptr<const FieldSpec> rationals();
  static std::shared_ptr<const FieldSpec> prime(std::uint64_t p);
  // modulus: coefficients of the monic minimal polynomial phi(T), index =
  // power of T, values reduced mod p; irreducibility is checked.
  static std::shared_ptr<const FieldSpec> extension(std::uint64_t p,
                                                    std::vector<std::uint64_t> modulus);

  Kind kind() const { return kind_; }
  std::uint64_t characteristic() const { return p_; }  // 0 for Q
  std::uint64_t p() const { return p_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  // Extension degree over the prime field (1 for F_p, 0 for Q).
  std::size_t degree() const;
  std::string describe() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.modulus_ == b.modulus_;
  }

 private:
  FieldSpec(Kind k, std::uint64_t p, std::vector<std::uint64_t> m)
      : kind_(k), p_(p), modulus_(std::move(m)) {}
  Kind kind_;
  std::uint64_t p_ = 0;
  std::vector<std::uint64_t> modulus_;  // empty unless Extension
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

// An exact field element in canonical form: a reduced fraction over Q, or a
// residue vector in the theta-basis over F_p / F_p[theta].
class Scalar {
 public:
  Scalar() = default;  // invalid until assigned
  static Scalar zero(const FieldPtr& f);
  static Scalar one(const FieldPtr& f);
  static Scalar from_int(const FieldPtr& f, const mpz_class& n);
  static Scalar from_rat(const FieldPtr& f, const Rat& q);  // Q only
  // Residue vector c0 + c1*theta + ...; length may be short, values any ints.
  static Scalar from_residues(const FieldPtr& f, const std::vector<std::int64_t>& c);

  const FieldPtr& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;
  Scalar pow(const mpz_class& n) const;  // n may be negative

  // Exact n-th root if one exists in the field.  Over Q this tests
  // numerator/denominator for perfect powers (sign-aware); over F_{p^k} it is
  // total for n = p (Frobenius is bijective) and falls back to search over
  // the (finite, desk-scale) field otherwise.
  bool nth_root(unsigned long n, Scalar& out) const;

  // Canonical total order for use as a map key (not an arithmetic order).
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  const Rat& rat_value() const { return q_; }                       // Q only
  const std::vector<std::uint64_t>& residues() const { return r_; }  // char p only

  std::string str() const;

 private:
  FieldPtr field_;
  Rat q_;                            // kind Rationals
  std::vector<std::uint64_t> r_;     // kind Prime/Extension, theta-basis
  void check_same(const Scalar& o) const;
};

// Embed a scalar of F_p (or of the same field) into an extension field built
// over the same prime field.
Scalar embed(const Scalar& s, const FieldPtr& bigger);

// theta, the class of T, as an element of an extension field.
Scalar theta_of(const FieldPtr& ext);

// All elements of a finite field (throws ScaleExceeded beyond desk scale).
std::vector<Scalar> field_elements(const FieldPtr& f);

// Irreducibility of a monic polynomial over F_p (degree <= 8, trial scale).
bool is_irreducible_mod_p(std::uint64_t p, const std::vector<std::uint64_t>& poly);

// Factor a univariate polynomial over F_p / F_p[theta] given by scalar
// coefficients (index = power).  Returns monic irreducible factors with
// multiplicity; desk scale (degree and field small).  The unit is dropped.
struct UniFactor {
  std::vector<Scalar> factor;  // monic, index = power
  unsigned multiplicity;
};
std::vector<UniFactor> factor_univariate(const std::vector<Scalar>& coeffs);

}  // namespace polyres

#endif
