#ifndef POLYRES_BLOWUP_HPP
#define POLYRES_BLOWUP_HPP

#include <polyres/label.hpp>

namespace polyres {

// A local chart of a point or curve blow-up in an e = 2 frame (the plain
// point-u1 chart also works for general e).
struct ChartSpec {
  enum class Kind {
    PointU1,
    PointU2,
    PointTranslated,
    PointNonrational,
    CurveU1,
    CurveU2
  };
  Kind kind;
  Polynomial phi;  // PointTranslated: translation, a polynomial in u
  Polynomial Phi;  // PointNonrational: irreducible binary form in u1, u2

  static ChartSpec point_u1() { return {Kind::PointU1, {}, {}}; }
  static ChartSpec point_u2() { return {Kind::PointU2, {}, {}}; }
  static ChartSpec point_translated(Polynomial phi) {
    return {Kind::PointTranslated, std::move(phi), {}};
  }
  static ChartSpec point_nonrational(Polynomial Phi) {
    return {Kind::PointNonrational, {}, std::move(Phi)};
  }
  static ChartSpec curve_u1() { return {Kind::CurveU1, {}, {}}; }
  static ChartSpec curve_u2() { return {Kind::CurveU2, {}, {}}; }
};

struct Nearness {
  enum class Kind { NotNear, Near, VeryNear };
  Kind kind;
  ExtRat delta;  // delta of the transformed polyhedron
};

// Transform of a label under a point blow-up chart.  The generator f_i is
// pulled back and divided by the n_i-th power of the chart parameter;
// NonDivisible means the multiplicity drops and the chart holds no near
// point.  The exceptional component is appended to the boundary, flagged new.
Label point_chart(const Label& label, const ChartSpec& chart);

// Transform under the blow-up of the curve (y, u_pivot).
Label curve_chart(const Label& label, std::size_t pivot = 0);

// Near/very-near classification of a transformed label by its delta.
Nearness classify_nearness(const Label& label_out, bool prepared);

// Vertex map of the polyhedron under a monomial chart (PointU1, PointU2,
// CurveU1); the translated and non-rational charts are not affine on Delta.
AffineMap chart_affine(ChartSpec::Kind kind, std::size_t e);

}  // namespace polyres

#endif
