#ifndef POLYRES_LABEL_HPP
#define POLYRES_LABEL_HPP

#include <string>
#include <vector>

#include <polyres/fsubset.hpp>
#include <polyres/poly.hpp>

namespace polyres {

// A boundary component at the current point, given by a generator of
// multiplicity one, tagged old/new by the local history.
struct BoundaryComponent {
  Polynomial gen;
  std::string id;
  bool old = false;
};

// (f, y, u): generator list with cached orders mod <u>, split parameter
// frame, and the local boundary multiset.
class Label {
 public:
  Label(FramePtr frame, std::vector<Polynomial> generators,
        std::vector<BoundaryComponent> boundary = {});

  const FramePtr& frame() const { return frame_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  const std::vector<unsigned>& orders() const { return n_; }
  const std::vector<BoundaryComponent>& boundary() const { return boundary_; }

  std::size_t r() const { return frame_->r(); }
  std::size_t e() const { return frame_->e(); }

  // Same frame/boundary, new generator list (orders recomputed).
  Label with_generators(std::vector<Polynomial> gens) const;
  Label with_boundary(std::vector<BoundaryComponent> b) const;

 private:
  FramePtr frame_;
  std::vector<Polynomial> gens_;
  std::vector<unsigned> n_;
  std::vector<BoundaryComponent> boundary_;
};

// The characteristic polyhedron: smallest F-subset containing every point
// A/(n_i - |B|) of every generator.
FSubset char_polyhedron(const Label& label);

// Points of the essential boundary over which some generator has a term.
std::vector<QPoint> essential_points(const Label& label);

// Boundary-extended polyhedron: generators plus the old boundary components.
FSubset boundary_polyhedron(const Label& label);

// The e = 2 invariants of the boundary polyhedron; throws EmptyPolyhedron
// when there are no contributing points.
Invariants2 boundary_invariants2(const Label& label);

// A linear subspace of the degree-one part of the symbol algebra, stored by
// a row-reduced basis of coefficient vectors over (Y-block, U-block).
struct Subspace {
  std::vector<std::vector<Scalar>> basis;  // reduced row echelon, no zero rows
  std::size_t dim() const { return basis.size(); }
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.basis == b.basis;
  }
};

// Degrees of a standard base extracted greedily from homogeneous generators
// (infinite tail implied).
struct NuStar {
  std::vector<unsigned> degrees;  // nondecreasing
  friend bool operator==(const NuStar& a, const NuStar& b) {
    return a.degrees == b.degrees;
  }
};

// Greedy minimal-degree selection among the given homogeneous forms;
// membership decided degree-by-degree by linear algebra.
NuStar nu_star(const std::vector<Polynomial>& forms);

// Smallest subspace T with F contained in k[T], for homogeneous nonzero F.
// Characteristic zero: span of the (deg-1)-fold partials.  Positive
// characteristic: exhaustive search over subspaces (desk scale only).
Subspace directrix(const Polynomial& F);

// Is the label strictly admissible, i.e. does the directrix of the initial
// forms equal the span of the Y-variables exactly?
bool check_strictly_admissible(const Label& label);

struct DeltaCriteria {
  bool delta_ge_1 = false;
  bool delta_gt_1 = false;
  bool delta_eq_1 = false;
};

// Order-theoretic delta tests read off the generators directly:
// delta >= 1 iff every n_(u)(f_i) equals the multiplicity; delta > 1 iff in
// addition the initial form at the origin is the pure Y-part.
DeltaCriteria delta_criteria(const Label& label);

}  // namespace polyres

#endif
