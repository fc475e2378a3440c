#include "matchdiff/rational.hpp"

#include "matchdiff/error.hpp"

#include <cstdlib>

namespace matchdiff {

Rat parse_rat(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw FormatError("empty rational");
  auto valid_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw FormatError("malformed rational '" + std::string(text) + "'");
  std::string ns(num), ds(den);
  if (!ns.empty() && ns.front() == '+') ns.erase(0, 1);
  if (!ds.empty() && ds.front() == '+') ds.erase(0, 1);
  Int n(ns, 10), d(ds, 10);
  if (d == 0) throw FormatError("zero denominator in '" + std::string(text) + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string rat_decimal(const Rat& value, int digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Int scaled = value.get_num() * scale;
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), value.get_den().get_mpz_t());
  bool negative = q < 0 || (q == 0 && value < 0);
  Int mag = abs(q);
  std::string s = mag.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits - s.size() + 1, '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Int binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Int factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  Int out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

Rat pow(const Rat& base, unsigned long exponent) {
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), exponent);
  Rat out(num, den);
  return out;  // lowest terms are preserved by powering
}

Rat pow(const Rat& base, long exponent) {
  if (exponent >= 0) return pow(base, static_cast<unsigned long>(exponent));
  if (base == 0) throw DomainError("negative power of zero");
  Rat inv = 1 / base;
  return pow(inv, static_cast<unsigned long>(-exponent));
}

Rat ratio(const Int& p, const Int& q) {
  if (q == 0) throw DomainError("zero denominator");
  Rat out(p, q);
  out.canonicalize();
  return out;
}

}  // namespace matchdiff
