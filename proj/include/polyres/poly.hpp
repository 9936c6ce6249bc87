#ifndef POLYRES_POLY_HPP
#define POLYRES_POLY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <polyres/field.hpp>
#include <polyres/rational.hpp>

namespace polyres {

// Split parameter system (y_1..y_r | u_1..u_e) over a coefficient field.
class Frame {
 public:
  Frame(std::vector<std::string> y_names, std::vector<std::string> u_names, FieldPtr field);

  std::size_t r() const { return y_names_.size(); }
  std::size_t e() const { return u_names_.size(); }
  const std::vector<std::string>& y_names() const { return y_names_; }
  const std::vector<std::string>& u_names() const { return u_names_; }
  const FieldPtr& field() const { return field_; }

  // Index of a variable: (is_y, position); nullopt if unknown.
  std::optional<std::pair<bool, std::size_t>> find(const std::string& name) const;

  friend bool operator==(const Frame& a, const Frame& b) {
    return a.y_names_ == b.y_names_ && a.u_names_ == b.u_names_ && *a.field_ == *b.field_;
  }

 private:
  std::vector<std::string> y_names_, u_names_;
  FieldPtr field_;
};

using FramePtr = std::shared_ptr<const Frame>;

// Exponent of a term y^B u^A.
struct ExponentPair {
  std::vector<unsigned> B;  // y-block
  std::vector<unsigned> A;  // u-block

  unsigned deg_B() const;
  unsigned deg_A() const;
  unsigned total() const { return deg_B() + deg_A(); }

  friend bool operator<(const ExponentPair& a, const ExponentPair& b) {
    if (a.B != b.B) return a.B < b.B;
    return a.A < b.A;
  }
  friend bool operator==(const ExponentPair& a, const ExponentPair& b) {
    return a.B == b.B && a.A == b.A;
  }
};

// Nonzero semi-positive linear form on the u-block.
class LinearForm {
 public:
  explicit LinearForm(std::vector<Rat> coeffs);
  static LinearForm L0(std::size_t e);  // all coefficients 1

  const std::vector<Rat>& coeffs() const { return c_; }
  bool positive() const;  // all c_i > 0
  bool monic() const { return c_[0] == 1; }
  Rat apply(const QPoint& a) const;
  Rat apply(const std::vector<unsigned>& a) const;

 private:
  std::vector<Rat> c_;
};

// Sparse multivariate polynomial with split exponents; zero coefficients are
// never stored.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(FramePtr frame) : frame_(std::move(frame)) {}

  static Polynomial zero(const FramePtr& f) { return Polynomial(f); }
  static Polynomial constant(const FramePtr& f, const Scalar& c);
  static Polynomial variable(const FramePtr& f, const std::string& name);
  static Polynomial monomial(const FramePtr& f, const ExponentPair& e, const Scalar& c);

  const FramePtr& frame() const { return frame_; }
  const std::map<ExponentPair, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  void add_term(const ExponentPair& e, const Scalar& c);  // accumulates

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial scaled(const Scalar& c) const;
  Polynomial pow(unsigned n) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return *a.frame_ == *b.frame_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string str() const;

 private:
  FramePtr frame_;
  std::map<ExponentPair, Scalar> terms_;
};

// ---- operations -----------------------------------------------------------

// n_(u)(f): minimal |B| over terms with A = 0; infinity if none.
ExtRat order_mod_u(const Polynomial& f);
// Same as an integer, throwing if infinite.
unsigned order_mod_u_finite(const Polynomial& f);

// min over terms of |B| + L(A); infinity for f = 0.  With L = L0 this is the
// multiplicity at the origin.
ExtRat valuation(const Polynomial& f, const LinearForm& L);

// Multiplicity v_m(f) (valuation with all weights 1 on both blocks).
ExtRat multiplicity(const Polynomial& f);

// Order along the curve center (y_1..y_r, u_idx): min |B| + A_idx.
ExtRat order_along_curve(const Polynomial& f, std::size_t u_idx);

struct InitialSelector {
  enum class Kind { Zero, Form, Vertex, Face } kind;
  LinearForm L{std::vector<Rat>{Rat(1)}};  // Form/Face
  QPoint v;                                // Vertex
  std::optional<Rat> level;                // Face: delta value; Form: computed
};

// Initial forms: the A=0, |B|=n part (Zero); that part plus the terms lying
// over a given polyhedron point (Vertex); or plus the terms on a bounded
// minimizing face of slope L (Form/Face).
Polynomial initial_form(const Polynomial& f, const InitialSelector& sel);

Polynomial initial_zero(const Polynomial& f);
Polynomial initial_at_vertex(const Polynomial& f, const QPoint& v);
Polynomial initial_on_face(const Polynomial& f, const LinearForm& L,
                           const std::optional<Rat>& level = std::nullopt);

// Full initial form at the origin: the terms of minimal total degree, read in
// the symbol algebra of all variables.
Polynomial initial_origin(const Polynomial& f);

// Exact substitution image for some variables; unmapped variables pass
// through by name into the target frame.  All images must share one frame.
Polynomial substitute(const Polynomial& f,
                      const std::map<std::string, Polynomial>& images,
                      const FramePtr& target);

// Exact division by u_idx^m; throws NonDivisible.
Polynomial divide_u_power(const Polynomial& f, std::size_t u_idx, unsigned m);

// Re-express a polynomial verbatim in another frame with the same variable
// names (possibly reordered or over an extended field).
Polynomial reframe(const Polynomial& f, const FramePtr& target);

// The polyhedron points A/(n - |B|) of all terms with |B| < n, where
// n = order_mod_u(f).  Empty when the order is infinite.
std::vector<QPoint> polyhedron_points(const Polynomial& f);

}  // namespace polyres

#endif
