#include "matchdiff/kseries.hpp"

#include "matchdiff/error.hpp"

namespace matchdiff {

std::vector<Rat> bernoulli(int m) {
  if (m < 0) throw DomainError("bernoulli index must be non-negative");
  std::vector<Rat> b(static_cast<size_t>(m) + 1);
  b[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Rat sum = 0;
    for (int t = 0; t < k; ++t) sum += Rat(binomial(k + 1, t)) * b[t];
    b[k] = -sum / Rat(k + 1);
  }
  return b;
}

Rat stirling_c(int j) {
  if (j < 1 || j % 2 == 0) throw DomainError("stirling_c is defined for odd j >= 1");
  int m = (j + 1) / 2;
  Rat b2m = bernoulli(2 * m).back();
  Int den = Int(2 * m) * (2 * m - 1);
  den <<= static_cast<unsigned long>(2 * m - 1);
  return -b2m / Rat(den);
}

namespace {

RLaurent scalar(const Rat& c, int order) { return RLaurent(c, ISeries::default_window(order)); }

// ln(1 - i/n) to the given order.
ISeries log_one_minus_i(int order) {
  ISeries x = ISeries::term(scalar(-1, order), 1, 1, order);
  return series_ln1p(x);
}

}  // namespace

GParts build_G_parts(int order) {
  if (order < 1) throw DomainError("build_G requires order >= 1");
  GParts parts{ISeries(order), ISeries(order), ISeries(order), ISeries(order), ISeries(order)};

  for (int m = 1; m <= order; ++m) {
    Rat c = -pow(Rat(1, 2), static_cast<unsigned long>(m)) / Rat(m);
    parts.log_half.add(m, JPoly::monomial(scalar(c, order), 1));
  }

  ISeries wide_log = log_one_minus_i(order + 1);
  ISeries factor(order + 1);
  factor.set(-1, JPoly::constant(scalar(2, order + 1)));
  factor.set(0, JPoly::monomial(scalar(-2, order + 1), 1));
  parts.log_bulk = (factor * wide_log).truncated(order);

  parts.linear.set(0, JPoly::monomial(scalar(2, order), 1));

  parts.log_sqrt = log_one_minus_i(order) * Rat(1, 2);

  for (int j = 1; j <= order; j += 2) {
    Rat cj = stirling_c(j);
    for (int t = 1; j + t <= order; ++t)
      parts.stirling_tail.add(j + t, JPoly::monomial(scalar(-cj * Rat(binomial(j - 1 + t, t)), order), t));
  }
  return parts;
}

ISeries build_G(int order) {
  GParts p = build_G_parts(order);
  ISeries g = p.log_half + p.log_bulk + p.linear + p.log_sqrt + p.stirling_tail;
  g.assert_no_positive_powers();
  if (!g.has_zero_constant()) throw ConsistencyError("G has a nonzero constant term: " + g.to_string());
  return g;
}

ISeries build_K(int order) { return series_exp(build_G(order)) - ISeries::one(order); }

Rat k_exact(long v, long i) {
  if (v < 2 || v % 2 != 0) throw DomainError("k_exact requires a positive even v");
  if (i < 0 || 2 * i > v) throw DomainError("k_exact requires 0 <= i <= v/2");
  long n = v / 2;
  Int num = factorial(v - 2 * i);
  Int base = Int(v - 1) * 2 * n;
  Int p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(i));
  num *= p;
  Rat out(num, factorial(v));
  out.canonicalize();
  return out;
}

}  // namespace matchdiff
