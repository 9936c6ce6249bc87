#include <polyres/simplex.hpp>

#include <cstddef>

#include <polyres/errors.hpp>

namespace polyres {

namespace {

struct Tableau {
  // rows m, structural columns n, then possibly artificials; last column rhs.
  std::vector<std::vector<Rat>> T;
  std::vector<Rat> cost;          // reduced-cost row (objective minimized)
  Rat obj = 0;                    // negative of current objective value
  std::vector<std::size_t> basis;
  std::size_t limit = 0;          // only columns < limit may enter the basis

  std::size_t rows() const { return T.size(); }
  std::size_t cols() const { return T.empty() ? 0 : T[0].size() - 1; }

  void pivot(std::size_t r, std::size_t c) {
    Rat piv = T[r][c];
    for (auto& x : T[r]) x /= piv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r) continue;
      Rat k = T[i][c];
      if (k == 0) continue;
      for (std::size_t j = 0; j < T[i].size(); ++j) T[i][j] -= k * T[r][j];
    }
    Rat k = cost[c];
    if (k != 0) {
      for (std::size_t j = 0; j < cols(); ++j) cost[j] -= k * T[r][j];
      obj -= k * T[r].back();
    }
    basis[r] = c;
  }

  // Bland's rule; returns false when optimal, throws on unbounded.
  bool step() {
    std::size_t enter = cols();
    for (std::size_t j = 0; j < limit; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == cols()) return false;
    std::size_t leave = rows();
    Rat best;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i].back() / T[i][enter];
      if (leave == rows() || ratio < best ||
          (ratio == best && basis[i] < basis[leave]))
        best = ratio, leave = i;
    }
    if (leave == rows()) throw Error("lp unbounded");
    pivot(leave, enter);
    return true;
  }
};

}  // namespace

LpResult lp_minimize(const std::vector<std::vector<Rat>>& A,
                     const std::vector<Rat>& b,
                     const std::vector<Rat>& c) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();
  Tableau t;
  t.T.assign(m, std::vector<Rat>(n + m + 1, Rat(0)));
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;  // keep rhs nonnegative
    for (std::size_t j = 0; j < n; ++j) t.T[i][j] = flip ? -A[i][j] : A[i][j];
    t.T[i][n + i] = 1;  // artificial
    t.T[i].back() = flip ? -b[i] : b[i];
    t.basis[i] = n + i;
  }

  // Phase 1: minimize the sum of artificials.
  t.limit = n + m;
  t.cost.assign(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) t.cost[n + i] = 1;
  for (std::size_t i = 0; i < m; ++i) {  // price out the initial basis
    for (std::size_t j = 0; j < n + m; ++j) t.cost[j] -= t.T[i][j];
    t.obj -= t.T[i].back();
  }
  while (t.step()) {
  }
  if (-t.obj != 0) return {LpResult::Status::Infeasible, Rat(0), {}};

  // Drive remaining artificials out of the basis if possible.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < n) continue;
    std::size_t c2 = n;
    for (std::size_t j = 0; j < n; ++j)
      if (t.T[i][j] != 0) {
        c2 = j;
        break;
      }
    if (c2 < n) t.pivot(i, c2);
    // else: redundant row; harmless to leave (its rhs is zero).
  }

  // Phase 2: real objective; artificial columns may no longer enter.
  t.limit = n;
  t.cost.assign(n + m, Rat(0));
  t.obj = 0;
  for (std::size_t j = 0; j < n; ++j) t.cost[j] = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] >= n) continue;
    Rat k = t.cost[t.basis[i]];
    if (k == 0) continue;
    for (std::size_t j = 0; j < n + m; ++j) t.cost[j] -= k * t.T[i][j];
    t.obj -= k * t.T[i].back();
  }
  try {
    while (t.step()) {
    }
  } catch (const Error&) {
    return {LpResult::Status::Unbounded, Rat(0), {}};
  }

  LpResult res{LpResult::Status::Optimal, Rat(0), std::vector<Rat>(n, Rat(0))};
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis[i] < n) res.z[t.basis[i]] = t.T[i].back();
  res.value = -t.obj;
  return res;
}

}  // namespace polyres
