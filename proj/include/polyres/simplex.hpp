#ifndef POLYRES_SIMPLEX_HPP
#define POLYRES_SIMPLEX_HPP

#include <vector>

#include <polyres/rational.hpp>

namespace polyres {

// Exact rational linear program in standard form:
//   minimize c.z  subject to  A z = b,  z >= 0.
// Two-phase simplex with Bland's rule (guaranteed to terminate).
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded } status;
  Rat value;               // optimal objective (Status::Optimal)
  std::vector<Rat> z;      // an optimal point (Status::Optimal)
};

LpResult lp_minimize(const std::vector<std::vector<Rat>>& A,
                     const std::vector<Rat>& b,
                     const std::vector<Rat>& c);

}  // namespace polyres

#endif
