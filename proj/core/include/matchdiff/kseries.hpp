#pragma once

#include "matchdiff/rational.hpp"
#include "matchdiff/series.hpp"

#include <vector>

namespace matchdiff {

/// Bernoulli numbers B_0..B_m with B_1 = -1/2.
std::vector<Rat> bernoulli(int m);

/// Constant of the odd Stirling tail term in 1/n^j - 1/(n-i)^j:
/// c_{2m-1} = -B_{2m} / (2m (2m-1) 2^{2m-1}).
Rat stirling_c(int j);

/// The five pieces of ln(1 + K_i), each as a series in 1/n with polynomial
/// coefficients in i.
struct GParts {
  ISeries log_half;       // i ln(1 - 1/(2n))
  ISeries log_bulk;       // (2n - 2i) ln(1 - i/n), carries n^{+1} before summing
  ISeries linear;         // 2i
  ISeries log_sqrt;       // (1/2) ln(1 - i/n)
  ISeries stirling_tail;  // sum over odd j of c_j (1/n^j - 1/(n-i)^j)
};

GParts build_G_parts(int order);

/// G = ln(1 + K_i), proper with zero constant term.
ISeries build_G(int order);

/// K_i = exp(G) - 1.
ISeries build_K(int order);

/// Exact 1 + K_i = (v-1)^i (v-2i)! 2^i n^i / v! with n = v/2.
Rat k_exact(long v, long i);

}  // namespace matchdiff
