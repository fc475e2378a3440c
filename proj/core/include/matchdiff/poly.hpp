#pragma once

#include "matchdiff/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace matchdiff {

/// Closed range of admissible r-exponents.
struct RWindow {
  int lo = 0;
  int hi = 0;

  bool contains(int e) const { return lo <= e && e <= hi; }
  bool contains(RWindow other) const { return lo <= other.lo && other.hi <= hi; }
  RWindow hull(RWindow other) const {
    return {lo < other.lo ? lo : other.lo, hi > other.hi ? hi : other.hi};
  }
  friend bool operator==(RWindow, RWindow) = default;
};

/// Laurent polynomial in r with exact rational coefficients. Exponents are
/// confined to a window; arithmetic that leaves the window throws
/// WindowOverflow rather than growing it. Use widened() to grow explicitly.
class RLaurent {
 public:
  RLaurent() = default;
  explicit RLaurent(RWindow window);
  RLaurent(const Rat& constant, RWindow window);

  static RLaurent monomial(const Rat& c, int exponent, RWindow window);

  RWindow window() const { return window_; }
  RLaurent widened(RWindow window) const;

  bool is_zero() const { return terms_.empty(); }
  Rat coeff(int exponent) const;
  const std::map<int, Rat>& terms() const { return terms_; }
  std::optional<int> min_exponent() const;
  std::optional<int> max_exponent() const;

  Rat eval(const Rat& r) const;

  RLaurent& operator+=(const RLaurent& other);
  RLaurent& operator-=(const RLaurent& other);
  RLaurent& operator*=(const Rat& scalar);
  RLaurent operator-() const;

  friend RLaurent operator+(RLaurent a, const RLaurent& b) { return a += b; }
  friend RLaurent operator-(RLaurent a, const RLaurent& b) { return a -= b; }
  friend RLaurent operator*(RLaurent a, const Rat& s) { return a *= s; }
  friend RLaurent operator*(const Rat& s, RLaurent a) { return a *= s; }
  friend RLaurent operator*(const RLaurent& a, const RLaurent& b);

  // Equality of values; windows are not compared.
  friend bool operator==(const RLaurent& a, const RLaurent& b) { return a.terms_ == b.terms_; }

  /// Human-readable form, e.g. "-1 + 1/2*r^-1".
  std::string to_string() const;

 private:
  void add_term(int exponent, const Rat& c);

  std::map<int, Rat> terms_;
  RWindow window_{};
};

/// Polynomial in the matching index j whose coefficients are RLaurent values.
/// Carries a degree bound that arithmetic enforces.
class JPoly {
 public:
  static constexpr int kMaxDegree = 96;

  JPoly() = default;
  explicit JPoly(RWindow window, int degree_bound = kMaxDegree);

  static JPoly constant(const RLaurent& c, int degree_bound = kMaxDegree);
  static JPoly monomial(const RLaurent& c, int jpow, int degree_bound = kMaxDegree);
  /// j(j-1)...(j-count+1) scaled by c.
  static JPoly falling_factorial(int count, const RLaurent& c);

  RWindow window() const { return window_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree_bound() const { return degree_bound_; }
  bool is_zero() const { return coeffs_.empty(); }
  RLaurent coeff(int jpow) const;
  const std::vector<RLaurent>& coeffs() const { return coeffs_; }

  void set_coeff(int jpow, const RLaurent& c);
  JPoly with_degree_bound(int bound) const;
  JPoly widened(RWindow window) const;

  RLaurent eval(const Rat& j) const;
  Rat eval(const Rat& j, const Rat& r) const;
  JPoly subst_r(const Rat& r) const;
  /// p(j) -> p(j - z).
  JPoly shift(long z) const;

  JPoly& operator+=(const JPoly& other);
  JPoly& operator-=(const JPoly& other);
  JPoly& operator*=(const Rat& scalar);
  JPoly& operator*=(const RLaurent& scalar);
  JPoly operator-() const;

  friend JPoly operator+(JPoly a, const JPoly& b) { return a += b; }
  friend JPoly operator-(JPoly a, const JPoly& b) { return a -= b; }
  friend JPoly operator*(JPoly a, const Rat& s) { return a *= s; }
  friend JPoly operator*(const Rat& s, JPoly a) { return a *= s; }
  friend JPoly operator*(const JPoly& a, const JPoly& b);

  friend bool operator==(const JPoly& a, const JPoly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string(const char* var = "j") const;

 private:
  void trim();

  std::vector<RLaurent> coeffs_;
  RWindow window_{};
  int degree_bound_ = kMaxDegree;
};

}  // namespace matchdiff
