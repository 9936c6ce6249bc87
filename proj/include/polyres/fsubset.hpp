#ifndef POLYRES_FSUBSET_HPP
#define POLYRES_FSUBSET_HPP

#include <optional>
#include <vector>

#include <polyres/poly.hpp>
#include <polyres/rational.hpp>

namespace polyres {

// Rational polyhedron of the shape conv(vertices) + R^e_{>=0}, stored by its
// (unique, minimal) extreme-vertex list; the empty set is allowed.
class FSubset {
 public:
  explicit FSubset(std::size_t e) : e_(e) {}

  std::size_t dim() const { return e_; }
  bool empty() const { return vertices_.empty(); }
  const std::vector<QPoint>& vertices() const { return vertices_; }

  // Membership in conv(vertices) + R^e_{>=0}, exact.
  bool contains(const QPoint& p) const;

  // Set inclusion (this subset of other), decided on vertices.
  bool subset_of(const FSubset& other) const;

  // Essential boundary: a point of the set from which no coordinate can be
  // decreased while staying inside (the union of the bounded faces).  The
  // interior part is the set minus the essential boundary.
  bool on_essential_boundary(const QPoint& p) const;
  bool in_interior_part(const QPoint& p) const;

  friend bool operator==(const FSubset& a, const FSubset& b) {
    return a.e_ == b.e_ && a.vertices_ == b.vertices_;
  }
  friend bool operator!=(const FSubset& a, const FSubset& b) { return !(a == b); }

 private:
  friend FSubset minimal_fsubset(std::size_t e, std::vector<QPoint> points);
  std::size_t e_;
  std::vector<QPoint> vertices_;  // sorted lexicographically
};

// Smallest F-subset containing the given points.
FSubset minimal_fsubset(std::size_t e, std::vector<QPoint> points);

// Is p contained in conv(generators) + R^e_{>=0}?  (Exact rational phase-1
// simplex; also used as the redundancy oracle for minimal_fsubset.)
bool in_hull_plus_cone(const QPoint& p, const std::vector<QPoint>& generators);

struct Face {
  LinearForm L;
  Rat level;                     // delta_L
  std::vector<QPoint> vertices;  // minimizing vertices
  bool bounded;                  // iff L is positive
};

// delta_L(Delta) and the face where the minimum is attained.
Face delta_face(const FSubset& d, const LinearForm& L);
// delta(Delta) = delta_{L0}.
Rat delta_invariant(const FSubset& d);
ExtRat delta_or_infinity(const FSubset& d);

// The e = 2 invariant suite.
struct Invariants2 {
  Rat alpha, beta, delta, gamma_plus, gamma_minus, eps, zeta;
  QPoint v, w_plus, w_minus;
};
Invariants2 invariants2(const FSubset& d);

// Image under (a_1..a_e) -> (a_1..a_s), re-minimalized.
FSubset project(const FSubset& d, std::size_t s);

// Affine map x -> Mx + b on Q^e.
struct AffineMap {
  std::vector<std::vector<Rat>> M;  // e rows of e entries
  std::vector<Rat> b;               // e entries
  QPoint apply(const QPoint& x) const;
  static AffineMap identity(std::size_t e);
};

// Apply an affine map to the vertices and re-minimalize; NegativeCoordinate
// if any image leaves the nonnegative orthant.
FSubset map_and_rebuild(const FSubset& d, const AffineMap& psi);

}  // namespace polyres

#endif
