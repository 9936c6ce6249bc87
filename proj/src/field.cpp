#include <polyres/field.hpp>

#include <algorithm>
#include <numeric>

#include <polyres/errors.hpp>

namespace polyres {

namespace {

using U64 = std::uint64_t;

U64 addm(U64 a, U64 b, U64 p) { return (a + b) % p; }
U64 subm(U64 a, U64 b, U64 p) { return (a + p - b % p) % p; }
U64 mulm(U64 a, U64 b, U64 p) { return (a * b) % p; }  // p <= 2^31 so no overflow

U64 powm(U64 a, mpz_class e, U64 p) {
  a %= p;
  U64 r = 1;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulm(r, a, p);
    a = mulm(a, a, p);
    e >>= 1;
  }
  return r;
}

U64 invm(U64 a, U64 p) {
  if (a % p == 0) throw Error("division by zero mod p");
  return powm(a, mpz_class(p) - 2, p);  // p prime
}

// ---- dense univariate arithmetic over F_p (index = power) -----------------

using FpPoly = std::vector<U64>;

void trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FpPoly mul(const FpPoly& a, const FpPoly& b, U64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = addm(c[i + j], mulm(a[i], b[j], p), p);
  trim(c);
  return c;
}

// Remainder of a modulo monic m.
FpPoly rem(FpPoly a, const FpPoly& m, U64 p) {
  trim(a);
  const std::size_t d = m.size() - 1;
  while (a.size() > d) {
    U64 lead = a.back();
    std::size_t shift = a.size() - 1 - d;
    if (lead != 0)
      for (std::size_t i = 0; i < m.size(); ++i)
        a[shift + i] = subm(a[shift + i], mulm(lead, m[i], p), p);
    a.pop_back();
    trim(a);
    if (a.size() <= d) break;
  }
  trim(a);
  return a;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, U64 p) {
  return rem(mul(a, b, p), m, p);
}

FpPoly powmod(FpPoly a, mpz_class e, const FpPoly& m, U64 p) {
  FpPoly r = {1};
  a = rem(std::move(a), m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mulmod(r, a, m, p);
    a = mulmod(a, a, m, p);
    e >>= 1;
  }
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b, U64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    U64 inv = invm(b.back(), p);
    FpPoly bm = b;
    for (auto& c : bm) c = mulm(c, inv, p);
    a = rem(std::move(a), bm, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    U64 inv = invm(a.back(), p);
    for (auto& c : a) c = mulm(c, inv, p);
  }
  return a;
}

}  // namespace

// ---- FieldSpec ------------------------------------------------------------

std::shared_ptr<const FieldSpec> FieldSpec::rationals() {
  static std::shared_ptr<const FieldSpec> q(
      new FieldSpec(Kind::Rationals, 0, {}));
  return q;
}

namespace {
bool is_prime_u64(U64 n) {
  if (n < 2) return false;
  for (U64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}
}  // namespace

std::shared_ptr<const FieldSpec> FieldSpec::prime(U64 p) {
  if (p > (1ull << 31) || !is_prime_u64(p))
    throw BadParameters("field characteristic must be a prime <= 2^31");
  return std::shared_ptr<const FieldSpec>(new FieldSpec(Kind::Prime, p, {}));
}

std::shared_ptr<const FieldSpec> FieldSpec::extension(U64 p, std::vector<U64> modulus) {
  if (p > (1ull << 31) || !is_prime_u64(p))
    throw BadParameters("field characteristic must be a prime <= 2^31");
  for (auto& c : modulus) c %= p;
  trim(modulus);
  if (modulus.size() < 3 || modulus.size() > 9)
    throw BadParameters("extension modulus must have degree 2..8");
  if (modulus.back() != 1) {
    U64 inv = invm(modulus.back(), p);
    for (auto& c : modulus) c = mulm(c, inv, p);
  }
  if (!is_irreducible_mod_p(p, modulus))
    throw ReducibleModulus("extension modulus factors over F_p");
  return std::shared_ptr<const FieldSpec>(
      new FieldSpec(Kind::Extension, p, std::move(modulus)));
}

std::size_t FieldSpec::degree() const {
  switch (kind_) {
    case Kind::Rationals: return 0;
    case Kind::Prime: return 1;
    case Kind::Extension: return modulus_.size() - 1;
  }
  return 0;
}

std::string FieldSpec::describe() const {
  switch (kind_) {
    case Kind::Rationals: return "Q";
    case Kind::Prime: return "F_" + std::to_string(p_);
    case Kind::Extension: {
      std::string s = "F_" + std::to_string(p_) + "[theta]/(";
      bool first = true;
      for (std::size_t i = modulus_.size(); i-- > 0;) {
        if (modulus_[i] == 0) continue;
        if (!first) s += " + ";
        first = false;
        if (i == 0 || modulus_[i] != 1) s += std::to_string(modulus_[i]);
        if (i >= 1) {
          if (modulus_[i] != 1) s += "*";
          s += "T";
          if (i >= 2) s += "^" + std::to_string(i);
        }
      }
      return s + ")";
    }
  }
  return "?";
}

bool is_irreducible_mod_p(U64 p, const std::vector<U64>& poly) {
  FpPoly m = poly;
  trim(m);
  if (m.size() < 2) return false;
  const std::size_t d = m.size() - 1;
  if (d == 1) return true;
  // Rabin test: T^(p^d) == T mod m, and gcd(T^(p^(d/q)) - T, m) = 1 for
  // every prime divisor q of d.
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, d);
  FpPoly x = {0, 1};
  FpPoly xpd = powmod(x, pd, m, p);
  FpPoly diff = xpd;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = subm(diff[1], 1, p);
  trim(diff);
  if (!diff.empty()) return false;
  std::size_t dd = d;
  for (std::size_t q = 2; q <= dd; ++q) {
    if (dd % q != 0) continue;
    while (dd % q == 0) dd /= q;
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, d / q);
    FpPoly xe = powmod(x, e, m, p);
    FpPoly g = xe;
    if (g.size() < 2) g.resize(2, 0);
    g[1] = subm(g[1], 1, p);
    if (!gcd(g, m, p).empty() && gcd(g, m, p).size() > 1) return false;
  }
  return true;
}

// ---- Scalar ---------------------------------------------------------------

void Scalar::check_same(const Scalar& o) const {
  if (!field_ || !o.field_ || !(*field_ == *o.field_))
    throw FrameMismatch("scalars from different fields");
}

Scalar Scalar::zero(const FieldPtr& f) {
  Scalar s;
  s.field_ = f;
  if (f->kind() != FieldSpec::Kind::Rationals) s.r_.assign(f->degree(), 0);
  return s;
}

Scalar Scalar::one(const FieldPtr& f) { return from_int(f, 1); }

Scalar Scalar::from_int(const FieldPtr& f, const mpz_class& n) {
  Scalar s = zero(f);
  if (f->kind() == FieldSpec::Kind::Rationals) {
    s.q_ = Rat(n);
  } else {
    mpz_class m = n % mpz_class(f->p());
    if (m < 0) m += f->p();
    s.r_[0] = m.get_ui();
  }
  return s;
}

Scalar Scalar::from_rat(const FieldPtr& f, const Rat& q) {
  if (f->kind() == FieldSpec::Kind::Rationals) {
    Scalar s = zero(f);
    s.q_ = q;
    s.q_.canonicalize();
    return s;
  }
  // num/den reduced mod p (den must be invertible).
  Scalar num = from_int(f, q.get_num());
  Scalar den = from_int(f, q.get_den());
  return num * den.inverse();
}

Scalar Scalar::from_residues(const FieldPtr& f, const std::vector<std::int64_t>& c) {
  if (f->kind() == FieldSpec::Kind::Rationals)
    throw UnsupportedField("residue vector over Q");
  Scalar s = zero(f);
  if (c.size() > s.r_.size()) throw BadParameters("residue vector too long");
  const std::int64_t p = static_cast<std::int64_t>(f->p());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t v = c[i] % p;
    if (v < 0) v += p;
    s.r_[i] = static_cast<U64>(v);
  }
  return s;
}

bool Scalar::is_zero() const {
  if (field_->kind() == FieldSpec::Kind::Rationals) return q_ == 0;
  return std::all_of(r_.begin(), r_.end(), [](U64 v) { return v == 0; });
}

bool Scalar::is_one() const {
  if (field_->kind() == FieldSpec::Kind::Rationals) return q_ == 1;
  if (r_.empty() || r_[0] != 1) return false;
  return std::all_of(r_.begin() + 1, r_.end(), [](U64 v) { return v == 0; });
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar s = *this;
  if (field_->kind() == FieldSpec::Kind::Rationals) {
    s.q_ += o.q_;
  } else {
    for (std::size_t i = 0; i < r_.size(); ++i) s.r_[i] = addm(r_[i], o.r_[i], field_->p());
  }
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar s = *this;
  if (field_->kind() == FieldSpec::Kind::Rationals) {
    s.q_ = -q_;
  } else {
    for (auto& v : s.r_) v = subm(0, v, field_->p());
  }
  return s;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar s = zero(field_);
  switch (field_->kind()) {
    case FieldSpec::Kind::Rationals:
      s.q_ = q_ * o.q_;
      s.q_.canonicalize();
      break;
    case FieldSpec::Kind::Prime:
      s.r_[0] = mulm(r_[0], o.r_[0], field_->p());
      break;
    case FieldSpec::Kind::Extension: {
      FpPoly prod = mulmod(FpPoly(r_.begin(), r_.end()), FpPoly(o.r_.begin(), o.r_.end()),
                           field_->modulus(), field_->p());
      for (std::size_t i = 0; i < prod.size(); ++i) s.r_[i] = prod[i];
      break;
    }
  }
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("inverse of zero");
  Scalar s = zero(field_);
  switch (field_->kind()) {
    case FieldSpec::Kind::Rationals:
      s.q_ = 1 / q_;
      break;
    case FieldSpec::Kind::Prime:
      s.r_[0] = invm(r_[0], field_->p());
      break;
    case FieldSpec::Kind::Extension: {
      // a^(p^d - 2) = a^{-1} in F_{p^d}.
      mpz_class order;
      mpz_ui_pow_ui(order.get_mpz_t(), field_->p(), field_->degree());
      return pow(order - 2);
    }
  }
  return s;
}

Scalar Scalar::pow(const mpz_class& n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar base = *this;
  Scalar acc = one(field_);
  mpz_class e = n;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

bool Scalar::nth_root(unsigned long n, Scalar& out) const {
  if (n == 0) throw BadParameters("0th root");
  if (n == 1 || is_zero()) {
    out = *this;
    return true;
  }
  if (field_->kind() == FieldSpec::Kind::Rationals) {
    const bool neg = q_ < 0;
    if (neg && n % 2 == 0) return false;
    mpz_class num = abs(q_.get_num()), den = q_.get_den(), rn, rd;
    if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return false;
    if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return false;
    Rat r(neg ? -rn : rn, rd);
    r.canonicalize();
    out = from_rat(field_, r);
    return true;
  }
  const U64 p = field_->p();
  const std::size_t k = field_->degree();
  // Peel off p-parts: x -> x^p is a bijection with inverse x -> x^(p^(k-1)).
  Scalar target = *this;
  unsigned long m = n;
  while (m % p == 0) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), p, k >= 1 ? k - 1 : 0);
    if (k == 1) e = 1;  // in F_p the Frobenius is the identity
    target = target.pow(e);
    m /= p;
  }
  if (m == 1) {
    out = target;
    return true;
  }
  // Remaining prime-to-p part: exhaustive search (desk scale).
  mpz_class size;
  mpz_ui_pow_ui(size.get_mpz_t(), p, k);
  if (size > 200000) throw ScaleExceeded("root search in a large finite field");
  std::vector<U64> digits(k, 0);
  for (;;) {
    Scalar cand = zero(field_);
    for (std::size_t i = 0; i < k; ++i) cand.r_[i] = digits[i];
    if (cand.pow(m) == target) {
      out = cand;
      return true;
    }
    std::size_t i = 0;
    while (i < k && ++digits[i] == p) digits[i++] = 0;
    if (i == k) return false;
  }
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.field_ || !b.field_ || !(*a.field_ == *b.field_)) return false;
  if (a.field_->kind() == FieldSpec::Kind::Rationals) return a.q_ == b.q_;
  return a.r_ == b.r_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.field_->kind() == FieldSpec::Kind::Rationals) return a.q_ < b.q_;
  return a.r_ < b.r_;
}

std::string Scalar::str() const {
  if (field_->kind() == FieldSpec::Kind::Rationals) return to_string(q_);
  if (field_->kind() == FieldSpec::Kind::Prime) return std::to_string(r_[0]);
  std::string s;
  bool first = true;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (r_[i] == 0) continue;
    if (!first) s += "+";
    first = false;
    if (i == 0 || r_[i] != 1) s += std::to_string(r_[i]);
    if (i >= 1) {
      if (r_[i] != 1) s += "*";
      s += "theta";
      if (i >= 2) s += "^" + std::to_string(i);
    }
  }
  return first ? "0" : s;
}

Scalar embed(const Scalar& s, const FieldPtr& bigger) {
  if (*s.field() == *bigger) return s;
  if (s.field()->kind() == FieldSpec::Kind::Prime &&
      bigger->kind() == FieldSpec::Kind::Extension &&
      s.field()->p() == bigger->p()) {
    return Scalar::from_residues(bigger, {static_cast<std::int64_t>(s.residues()[0])});
  }
  throw UnsupportedField("no embedding between these fields");
}

Scalar theta_of(const FieldPtr& ext) {
  if (ext->kind() != FieldSpec::Kind::Extension)
    throw UnsupportedField("theta requested from a non-extension field");
  return Scalar::from_residues(ext, {0, 1});
}

// ---- univariate factorization (desk scale) --------------------------------

namespace {

// Divide a by monic b; caller guarantees exact division is wanted when
// remainder is discarded.
std::vector<Scalar> poly_divmod(std::vector<Scalar> a, const std::vector<Scalar>& b,
                                std::vector<Scalar>& quot) {
  const FieldPtr f = b.back().field();
  quot.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Scalar::zero(f));
  while (a.size() >= b.size()) {
    Scalar lead = a.back();
    std::size_t shift = a.size() - b.size();
    if (!lead.is_zero()) {
      quot[shift] = quot[shift] + lead;
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - lead * b[i];
    }
    a.pop_back();
  }
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;  // remainder
}

void make_monic(std::vector<Scalar>& f) {
  Scalar inv = f.back().inverse();
  for (auto& c : f) c = c * inv;
}

// Enumerate all field elements (throws beyond desk scale).
std::vector<Scalar> all_elements(const FieldPtr& f) {
  const U64 p = f->p();
  const std::size_t k = f->degree();
  mpz_class size;
  mpz_ui_pow_ui(size.get_mpz_t(), p, k);
  if (size > 100000) throw ScaleExceeded("element enumeration in a large field");
  std::vector<Scalar> out;
  std::vector<std::int64_t> digits(k, 0);
  for (;;) {
    out.push_back(Scalar::from_residues(f, digits));
    std::size_t i = 0;
    while (i < k && ++digits[i] == static_cast<std::int64_t>(p)) digits[i++] = 0;
    if (i == k) break;
  }
  return out;
}

Scalar eval_poly(const std::vector<Scalar>& f, const Scalar& x) {
  Scalar acc = Scalar::zero(x.field());
  for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

}  // namespace

std::vector<Scalar> field_elements(const FieldPtr& f) {
  if (f->kind() == FieldSpec::Kind::Rationals)
    throw ScaleExceeded("cannot enumerate Q");
  return all_elements(f);
}

std::vector<UniFactor> factor_univariate(const std::vector<Scalar>& coeffs) {
  std::vector<Scalar> f = coeffs;
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  if (f.size() <= 1) return {};
  const FieldPtr field = f[0].field();
  if (field->kind() == FieldSpec::Kind::Rationals)
    throw UnsupportedField("univariate factorization over Q is out of scope");
  make_monic(f);

  std::vector<UniFactor> out;
  auto push = [&out](std::vector<Scalar> fac) {
    for (auto& e : out)
      if (e.factor == fac) {
        ++e.multiplicity;
        return;
      }
    out.push_back({std::move(fac), 1});
  };

  const std::vector<Scalar> elems = all_elements(field);
  // Strip linear factors by exhaustive root search.
  bool progressed = true;
  while (f.size() > 1 && progressed) {
    progressed = false;
    for (const Scalar& r : elems) {
      while (f.size() > 1 && eval_poly(f, r).is_zero()) {
        std::vector<Scalar> lin = {-r, Scalar::one(field)};
        std::vector<Scalar> q;
        poly_divmod(f, lin, q);
        f = q;
        push(lin);
        progressed = true;
      }
    }
    if (f.size() <= 2) break;
    // Search a monic divisor of degree 2..deg/2 (rootless part).
    std::size_t deg = f.size() - 1;
    bool split = false;
    for (std::size_t d = 2; d <= deg / 2 && !split; ++d) {
      // Enumerate monic degree-d candidates.
      std::vector<std::size_t> idx(d, 0);
      for (;;) {
        std::vector<Scalar> cand(d + 1, Scalar::zero(field));
        cand[d] = Scalar::one(field);
        for (std::size_t i = 0; i < d; ++i) cand[i] = elems[idx[i]];
        std::vector<Scalar> q;
        if (poly_divmod(f, cand, q).empty()) {
          push(cand);
          f = q;
          split = true;
          progressed = true;
          break;
        }
        std::size_t i = 0;
        while (i < d && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == d) break;
      }
    }
  }
  if (f.size() > 1) push(f);  // remaining irreducible part
  return out;
}

}  // namespace polyres
