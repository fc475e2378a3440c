#include "matchdiff/linsolve.hpp"

#include "matchdiff/error.hpp"

namespace matchdiff {

SolveResult solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const size_t rows = a.size();
  if (b.size() != rows) throw DomainError("solve_exact: row count mismatch");
  const size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != cols) throw DomainError("solve_exact: ragged matrix");

  SolveResult out;
  out.x.assign(cols, Rat(0));
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rat inv = 1 / a[r][c];
    for (size_t k = c; k < cols; ++k) a[r][k] *= inv;
    b[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  out.rank = static_cast<int>(r);
  for (size_t i = r; i < rows; ++i)
    if (b[i] != 0) out.consistent = false;
  for (size_t i = 0; i < r; ++i) out.x[pivot_col[i]] = b[i];
  return out;
}

}  // namespace matchdiff
