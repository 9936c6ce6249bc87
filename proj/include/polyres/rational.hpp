#ifndef POLYRES_RATIONAL_HPP
#define POLYRES_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace polyres {

// Exact rational number; canonicalized on construction.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

// "a/b" with the "/b" omitted for integers; used for all JSON output.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline mpz_class floor_z(const Rat& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

inline mpz_class ceil_z(const Rat& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return r;
}

// Rational extended with +infinity (used for valuations and deltas of
// empty polyhedra).
class ExtRat {
 public:
  ExtRat() : inf_(true) {}  // default: +infinity
  ExtRat(const Rat& v) : inf_(false), v_(v) {}
  ExtRat(long v) : inf_(false), v_(v) {}
  static ExtRat infinity() { return ExtRat(); }

  bool is_infinite() const { return inf_; }
  const Rat& value() const { return v_; }  // only when finite

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.v_ == b.v_;
  }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return a < b || a == b; }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return b <= a; }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }

  ExtRat operator+(const ExtRat& o) const {
    if (inf_ || o.inf_) return infinity();
    return ExtRat(v_ + o.v_);
  }
  ExtRat operator-(const ExtRat& o) const {  // only finite - finite
    return ExtRat(v_ - o.v_);
  }

  std::string str() const { return inf_ ? "inf" : to_string(v_); }

 private:
  bool inf_;
  Rat v_;
};

// A point of Q^e with nonnegative coordinates.
using QPoint = std::vector<Rat>;

inline Rat coord_sum(const QPoint& p) {
  Rat s = 0;
  for (const auto& c : p) s += c;
  return s;
}

// |v|-then-lexicographic order on Q^e: v > w iff |v| > |w|, or the sums tie
// and v > w lexicographically.  This is the vertex-visiting order of the
// preparation loop.
inline bool size_lex_less(const QPoint& a, const QPoint& b) {
  Rat sa = coord_sum(a), sb = coord_sum(b);
  if (sa != sb) return sa < sb;
  return a < b;  // std::vector lexicographic via mpq_class comparison
}

}  // namespace polyres

#endif
