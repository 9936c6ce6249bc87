#ifndef POLYRES_LINALG_HPP
#define POLYRES_LINALG_HPP

#include <cstddef>
#include <vector>

#include <polyres/field.hpp>

namespace polyres {

// Dense row-reduction over an abstract exact field.  Rows are vectors of
// Scalars of equal length; the result is the reduced row-echelon form with
// zero rows dropped, plus the pivot column of each remaining row (pivots are
// chosen left to right, so a column ordering chosen by the caller doubles as
// a term order).
struct Echelon {
  std::vector<std::vector<Scalar>> rows;
  std::vector<std::size_t> pivots;
};

Echelon row_reduce(std::vector<std::vector<Scalar>> rows);

// Does target lie in the span of the given (arbitrary) rows?
bool in_row_span(const std::vector<std::vector<Scalar>>& rows,
                 const std::vector<Scalar>& target);

// Reduce target against an echelon basis; returns the residue.
std::vector<Scalar> reduce_against(const Echelon& ech, std::vector<Scalar> target);

}  // namespace polyres

#endif
