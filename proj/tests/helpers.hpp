#ifndef POLYRES_TESTS_HELPERS_HPP
#define POLYRES_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include <polyres/cli.hpp>
#include <polyres/label.hpp>

namespace polyres::testing {

inline FramePtr frame_q2() {
  return std::make_shared<const Frame>(std::vector<std::string>{"y"},
                                       std::vector<std::string>{"u1", "u2"},
                                       FieldSpec::rationals());
}

inline FramePtr frame_f3() {
  return std::make_shared<const Frame>(std::vector<std::string>{"y"},
                                       std::vector<std::string>{"u1", "u2"},
                                       FieldSpec::prime(3));
}

inline FramePtr frame_fp(std::uint64_t p) {
  return std::make_shared<const Frame>(std::vector<std::string>{"y"},
                                       std::vector<std::string>{"u1", "u2"},
                                       FieldSpec::prime(p));
}

// Parse a polynomial in the frame's variables; convenience for test fixtures.
inline Polynomial poly(const FramePtr& f, const std::string& text) {
  return parse_poly(text, f);
}

inline Label label1(const FramePtr& f, const std::string& text) {
  return Label(f, {poly(f, text)});
}

inline QPoint qp(const std::string& a, const std::string& b) {
  return {rat(a), rat(b)};
}

// Random sparse single-generator label y^n + lower terms over the given
// frame.  With curve_permissible, a1 > n - b on every term, so the first
// polyhedron coordinate stays strictly above 1 and the curve (y, u1) keeps
// the order in its chart.
inline Label random_label(std::mt19937& rng, const FramePtr& f,
                          bool curve_permissible = false) {
  std::uniform_int_distribution<unsigned> nd(2, 4), bd(0, 3), ad(0, 9),
      cd(1, 6);
  unsigned n = nd(rng);
  Polynomial g(f);
  g.add_term(ExponentPair{{n}, {0, 0}}, Scalar::one(f->field()));
  unsigned terms = 1 + bd(rng) + bd(rng);
  for (unsigned t = 0; t < terms; ++t) {
    unsigned b = bd(rng) % n;  // b < n
    unsigned a1 = ad(rng), a2 = ad(rng);
    if (a1 + a2 == 0) a1 = 1;
    if (curve_permissible) {
      a1 = std::max(a1, 1u);
      if (a1 <= n - b) a1 += n - b;
    }
    Scalar c = Scalar::from_int(f->field(), static_cast<long>(cd(rng)));
    if (c.is_zero()) continue;
    g.add_term(ExponentPair{{b}, {a1, a2}}, c);
  }
  return Label(f, {g});
}

}  // namespace polyres::testing

#endif
