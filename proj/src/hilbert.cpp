#include <polyres/hilbert.hpp>

#include <algorithm>
#include <map>

#include <polyres/errors.hpp>

namespace polyres {

namespace {

void trim(std::vector<Rat>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class binom(const mpz_class& n, unsigned long k) {
  if (n < 0) throw BadParameters("negative binomial argument");
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace

HilbertPolynomial::HilbertPolynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) {
  trim(c_);
}

Rat HilbertPolynomial::eval(const mpz_class& n) const {
  Rat acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * Rat(n) + c_[i];
  return acc;
}

HilbertPolynomial HilbertPolynomial::operator+(const HilbertPolynomial& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return HilbertPolynomial(std::move(c));
}

HilbertPolynomial HilbertPolynomial::operator-(const HilbertPolynomial& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] -= o.c_[i];
  return HilbertPolynomial(std::move(c));
}

HilbertPolynomial HilbertPolynomial::shifted(long k) const {
  // Horner in (T + k).
  std::vector<Rat> acc;  // result coefficients
  for (std::size_t i = c_.size(); i-- > 0;) {
    // acc := acc * (T + k) + c_[i]
    std::vector<Rat> next(acc.size() + 1, Rat(0));
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += acc[j];
      next[j] += acc[j] * Rat(k);
    }
    if (next.empty()) next.push_back(Rat(0));
    next[0] += c_[i];
    acc = std::move(next);
  }
  return HilbertPolynomial(std::move(acc));
}

std::string HilbertPolynomial::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    s += to_string(c_[i]);
    if (i > 0) s += "*T^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

bool HilbertPolynomial::integer_valued() const {
  for (int n = 0; n <= degree() + 1; ++n)
    if (!is_integer(eval(n))) return false;
  return true;
}

HilbertPolynomial binomial_poly(unsigned a, long c) {
  // C(T + c, a) = prod_{i=0}^{a-1} (T + c - i) / a!
  std::vector<Rat> poly{Rat(1)};
  for (unsigned i = 0; i < a; ++i) {
    std::vector<Rat> next(poly.size() + 1, Rat(0));
    Rat shift = Rat(c) - Rat(static_cast<long>(i));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] += poly[j] * shift;
    }
    poly = std::move(next);
  }
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), a);
  for (auto& x : poly) x /= Rat(fact);
  return HilbertPolynomial(std::move(poly));
}

mpz_class HilbertFunction::at(const mpz_class& n) const {
  if (n < static_cast<long>(values.size()))
    return values[n.get_ui()];
  Rat v = tail.eval(n);
  if (!is_integer(v)) throw NotAHilbertPolynomial("non-integer tail value");
  return v.get_num();
}

HilbertFunction hf_monomial(const std::vector<std::vector<unsigned>>& generators,
                            std::size_t nvars) {
  if (nvars == 0 || nvars > 6) throw ScaleExceeded("hf_monomial variable count");
  for (const auto& g : generators) {
    if (g.size() != nvars) throw WrongDimension("generator exponent length");
    unsigned d = 0;
    for (unsigned x : g) d += x;
    if (d > 20) throw ScaleExceeded("hf_monomial generator degree");
  }
  // Drop generators dominated by another (they generate nothing new).
  std::vector<std::vector<unsigned>> gens;
  for (const auto& g : generators) {
    bool dominated = false;
    for (const auto& h : generators) {
      if (&g == &h) continue;
      bool dom = true, eq = true;
      for (std::size_t i = 0; i < nvars; ++i) {
        if (h[i] > g[i]) dom = false;
        if (h[i] != g[i]) eq = false;
      }
      if (dom && (!eq || &h < &g)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) gens.push_back(g);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (gens.size() > 16) throw ScaleExceeded("hf_monomial generator count");

  // Signed counts per subset-lcm degree (empty subset included with +1).
  std::map<unsigned, long> coef;
  const std::size_t m = gens.size();
  for (std::size_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<unsigned> lcm(nvars, 0);
    int sign = 1;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        sign = -sign;
        for (std::size_t j = 0; j < nvars; ++j)
          lcm[j] = std::max(lcm[j], gens[i][j]);
      }
    unsigned c = 0;
    for (unsigned x : lcm) c += x;
    coef[c] += sign;
  }

  const unsigned d = static_cast<unsigned>(nvars) - 1;
  unsigned n0 = coef.empty() ? 0 : coef.rbegin()->first;

  HilbertFunction h;
  for (unsigned n = 0; n <= n0; ++n) {
    mpz_class v = 0;
    for (const auto& [c, k] : coef) {
      if (n < c || k == 0) continue;
      v += mpz_class(k) * binom(mpz_class(n - c + d), d);
    }
    h.values.push_back(v);
  }
  HilbertPolynomial tail;
  for (const auto& [c, k] : coef) {
    if (k == 0) continue;
    HilbertPolynomial term = binomial_poly(d, static_cast<long>(d) - static_cast<long>(c));
    std::vector<Rat> scaled = term.coeffs();
    for (auto& x : scaled) x *= Rat(static_cast<long>(k));
    tail = tail + HilbertPolynomial(std::move(scaled));
  }
  h.tail = tail;
  // Consistency check at the cut.
  if (!h.values.empty() && Rat(h.values.back()) != tail.eval(n0))
    throw NotAHilbertPolynomial("tail mismatch at cutoff");
  return h;
}

HilbertFunction iterate_sum(const HilbertFunction& h, unsigned t) {
  if (t > 5) throw ScaleExceeded("iterate_sum depth");
  HilbertFunction cur = h;
  for (unsigned step = 0; step < t; ++step) {
    const std::size_t n0 = cur.values.empty() ? 0 : cur.values.size() - 1;
    const int dnew = cur.tail.degree() + 1;  // degree of the summed tail
    const std::size_t need = n0 + static_cast<std::size_t>(std::max(dnew, 0)) + 3;
    // Explicit prefix sums out past the interpolation window.
    std::vector<mpz_class> sums;
    mpz_class acc = 0;
    for (std::size_t n = 0; n <= need; ++n) {
      acc += cur.at(static_cast<long>(n));
      sums.push_back(acc);
    }
    // Lagrange-interpolate the new tail from the last dnew+2 samples.
    const std::size_t k = static_cast<std::size_t>(std::max(dnew, 0)) + 2;
    HilbertPolynomial tail;
    for (std::size_t i = 0; i < k; ++i) {
      long xi = static_cast<long>(need - k + 1 + i);
      std::vector<Rat> li{Rat(1)};
      Rat denom = 1;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        long xj = static_cast<long>(need - k + 1 + j);
        std::vector<Rat> next(li.size() + 1, Rat(0));
        for (std::size_t u = 0; u < li.size(); ++u) {
          next[u + 1] += li[u];
          next[u] -= li[u] * Rat(xj);
        }
        li = std::move(next);
        denom *= Rat(xi - xj);
      }
      Rat w = Rat(sums[need - k + 1 + i]) / denom;
      for (auto& x : li) x *= w;
      tail = tail + HilbertPolynomial(std::move(li));
    }
    // The tail is valid wherever the samples were; keep explicit values up to
    // the window start and verify one overlap point.
    std::size_t new_n0 = need - k + 1;
    if (Rat(sums[new_n0]) != tail.eval(static_cast<long>(new_n0)))
      throw NotAHilbertPolynomial("iterated tail mismatch");
    cur.values.assign(sums.begin(), sums.begin() + static_cast<long>(new_n0) + 1);
    cur.tail = tail;
  }
  return cur;
}

ADecomposition decompose(const HilbertPolynomial& p) {
  ADecomposition out;
  HilbertPolynomial r = p;
  unsigned prev = ~0u;
  for (unsigned i = 0; !r.is_zero(); ++i) {
    if (i > 5000) throw NotAHilbertPolynomial("decomposition does not terminate");
    if (r.coeffs().back() < 0)
      throw NotAHilbertPolynomial("negative leading coefficient");
    unsigned a = static_cast<unsigned>(r.degree());
    if (a > prev) throw NotAHilbertPolynomial("exponents increase");
    prev = a;
    out.a.push_back(a);
    r = r - binomial_poly(a, static_cast<long>(a) - static_cast<long>(i));
  }
  if (out.a.empty()) throw NotAHilbertPolynomial("zero polynomial");
  if (recompose(out) != p) throw NotAHilbertPolynomial("recomposition mismatch");
  return out;
}

HilbertPolynomial recompose(const ADecomposition& dec) {
  HilbertPolynomial p;
  for (std::size_t i = 0; i < dec.a.size(); ++i)
    p = p + binomial_poly(dec.a[i],
                          static_cast<long>(dec.a[i]) - static_cast<long>(i));
  return p;
}

int compare(const HilbertPolynomial& p, const HilbertPolynomial& q) {
  // The zero polynomial (empty decomposition) sits below everything else.
  if (p.is_zero() || q.is_zero()) {
    if (p.is_zero() && q.is_zero()) return 0;
    return p.is_zero() ? -1 : 1;
  }
  ADecomposition a = decompose(p), b = decompose(q);
  for (std::size_t i = 0; i < std::min(a.a.size(), b.a.size()); ++i) {
    if (a.a[i] != b.a[i]) return a.a[i] < b.a[i] ? -1 : 1;
  }
  if (a.a.size() != b.a.size()) return a.a.size() < b.a.size() ? -1 : 1;
  return 0;
}

mpz_class phi(unsigned t, unsigned long n) {
  if (t == 0) return n == 0 ? 1 : 0;
  return binom(mpz_class(n + t - 1), n);
}

}  // namespace polyres
