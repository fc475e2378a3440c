#pragma once

#include "matchdiff/rational.hpp"

#include <vector>

namespace matchdiff {

struct SolveResult {
  std::vector<Rat> x;  // free variables set to zero
  int rank = 0;
  bool consistent = true;
  bool full_rank() const { return rank == static_cast<int>(x.size()); }
};

/// Exact Gauss-Jordan elimination of a x = b over the rationals.
SolveResult solve_exact(std::vector<std::vector<Rat>> a, std::vector<Rat> b);

}  // namespace matchdiff
