#ifndef POLYRES_PREPARE_HPP
#define POLYRES_PREPARE_HPP

#include <optional>
#include <string>
#include <vector>

#include <polyres/label.hpp>

namespace polyres {

// Dissolution data at an integral vertex: the generator-wise translation
// coefficients lambda with z_i = y_i - lambda_i * u^v.
struct Solution {
  std::vector<Scalar> lambda;  // one per y-variable, not all zero
  std::vector<unsigned> vertex;  // integral vertex v
};

struct SolveOutcome {
  enum class Kind { Solved, NotSolvable, Undecided } kind;
  std::optional<Solution> solution;  // present iff Solved
};

// One entry of the preparation trace.
struct PrepStep {
  enum class Action { Normalized, Dissolved, AlreadyPrepared, Undecided };
  QPoint vertex;
  Action action;
  std::vector<Scalar> lambda;  // Dissolved only
};

struct PrepReport {
  std::vector<PrepStep> steps;
  bool has_undecided = false;
};

// Minimal generators (up to max_degree) of the monomial set of lex-leading
// exponents of the homogeneous ideal generated by the forms; forms must be
// homogeneous polynomials in the y-block only.
std::vector<std::vector<unsigned>> leading_exponent_set(
    const std::vector<Polynomial>& forms, unsigned max_degree);

// Is every term of every generator lying over v free of leading exponents of
// the earlier generators' degree forms?  Single generator: always true.
bool is_normalized_at(const Label& label, const QPoint& v);

// Eliminate, by subtracting u-multiples of earlier generators, every term
// over v whose y-exponent is a leading exponent of the earlier degree forms.
// The polyhedron can only shrink and the degree forms are unchanged.
Label normalize_at(const Label& label, const QPoint& v);

// Same elimination applied to every point of a bounded face at once.
Label normalize_along_face(const Label& label, const Face& face);

// Decide whether the vertex can be removed by a translation z = y - c u^v.
SolveOutcome solvable_at(const Label& label, const QPoint& v);

// Apply the translation; the target vertex disappears, all other vertices
// and their initial forms survive.
Label dissolve_at(const Label& label, const Solution& sol);

// Alternately normalize and dissolve at the smallest untreated vertex in
// |v|-then-lex order, restricted to vertices with coordinate sum <= M.
// Honors the CHARPOLY_STEP_CAP environment variable; throws NonTermination
// when the cap is hit.
std::pair<Label, PrepReport> prepare(const Label& label, const Rat& M);

// Standard-base predicate behind the delta > 1 characterization: every
// generator's order mod <u> equals its multiplicity and its initial form at
// the origin is a pure y-polynomial.
bool standard_base_characterization(const Label& label);

}  // namespace polyres

#endif
