#include <polyres/linalg.hpp>

#include <algorithm>

#include <polyres/errors.hpp>

namespace polyres {

Echelon row_reduce(std::vector<std::vector<Scalar>> rows) {
  Echelon out;
  if (rows.empty()) return out;
  const std::size_t width = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (!rows[i][col].is_zero()) {
        piv = i;
        break;
      }
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    Scalar inv = rows[rank][col].inverse();
    for (auto& x : rows[rank]) x = x * inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][col].is_zero()) continue;
      Scalar k = rows[i][col];
      for (std::size_t j = 0; j < width; ++j)
        rows[i][j] = rows[i][j] - k * rows[rank][j];
    }
    out.pivots.push_back(col);
    ++rank;
  }
  rows.resize(rank);
  out.rows = std::move(rows);
  return out;
}

std::vector<Scalar> reduce_against(const Echelon& ech, std::vector<Scalar> target) {
  for (std::size_t i = 0; i < ech.rows.size(); ++i) {
    const Scalar& k = target[ech.pivots[i]];
    if (k.is_zero()) continue;
    Scalar kk = k;
    for (std::size_t j = 0; j < target.size(); ++j)
      target[j] = target[j] - kk * ech.rows[i][j];
  }
  return target;
}

bool in_row_span(const std::vector<std::vector<Scalar>>& rows,
                 const std::vector<Scalar>& target) {
  Echelon ech = row_reduce(rows);
  auto residue = reduce_against(ech, target);
  return std::all_of(residue.begin(), residue.end(),
                     [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace polyres
