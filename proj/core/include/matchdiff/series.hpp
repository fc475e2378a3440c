#pragma once

#include "matchdiff/poly.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace matchdiff {

// Tags for the polynomial variable of a series. JIndex is the matching index
// of H_j; IIndex is the index of K_i. Mixing them requires relabel().
struct JIndex {
  static constexpr const char* name = "j";
};
struct IIndex {
  static constexpr const char* name = "i";
};

/// Truncated series in 1/n. The coefficient of n^{-h} is a JPoly in the index
/// variable with RLaurent-in-r coefficients. Coefficients are exact through
/// n^{-order}; a small band of positive n-powers (n^{+1}, n^{+2}) is allowed
/// for intermediates.
template <class Index>
class NSeries {
 public:
  static constexpr int kDefaultOrder = 6;
  static constexpr int kDefaultBand = 2;

  explicit NSeries(int order = kDefaultOrder);
  NSeries(int order, RWindow window, int band = kDefaultBand);

  static NSeries one(int order = kDefaultOrder);
  static NSeries constant(const Rat& c, int order = kDefaultOrder);
  static NSeries term(const RLaurent& c, int jpow, int npow, int order = kDefaultOrder);
  static NSeries from_poly(const JPoly& p, int npow, int order = kDefaultOrder);

  int order() const { return order_; }
  int band() const { return band_; }
  RWindow window() const { return window_; }
  static RWindow default_window(int order) { return {-order, order}; }

  /// Lowest n-exponent with a nonzero coefficient; nullopt for the zero series.
  std::optional<int> valuation() const;
  bool is_zero() const { return !valuation().has_value(); }
  /// No positive powers of n.
  bool is_proper() const;
  /// Proper and the n^0 coefficient is zero.
  bool has_zero_constant() const;

  const JPoly& at(int npow) const;
  RLaurent coeff(int jpow, int npow) const;

  void set(int npow, const JPoly& p);
  void add(int npow, const JPoly& p);

  NSeries truncated(int order) const;
  NSeries widened(RWindow window) const;

  NSeries subst_j(const Int& j0) const;
  NSeries subst_r(const Rat& r0) const;
  NSeries shift_j(long z) const;

  /// Throws DomainError if any positive power of n survived.
  void assert_no_positive_powers() const;

  NSeries& operator+=(const NSeries& other);
  NSeries& operator-=(const NSeries& other);
  NSeries& operator*=(const Rat& scalar);
  NSeries operator-() const;

  friend NSeries operator+(NSeries a, const NSeries& b) { return a += b; }
  friend NSeries operator-(NSeries a, const NSeries& b) { return a -= b; }
  friend NSeries operator*(NSeries a, const Rat& s) { return a *= s; }
  friend NSeries operator*(const Rat& s, NSeries a) { return a *= s; }
  template <class I>
  friend NSeries<I> operator*(const NSeries<I>& a, const NSeries<I>& b);

  /// Same order and equal coefficients.
  friend bool operator==(const NSeries& a, const NSeries& b) {
    return a.order_ == b.order_ && a.coeffs_equal(b);
  }
  bool coeffs_equal(const NSeries& other) const;

  /// Header `nseries H=<order>`, then `h jpow rpow p/q` per nonzero term.
  std::string to_text() const;
  static NSeries from_text(std::string_view text);

  std::string to_string() const;

 private:
  void check_window(const JPoly& p) const;
  size_t slot(int npow) const { return static_cast<size_t>(npow + band_); }
  bool in_range(int npow) const { return npow >= -band_ && npow <= order_; }

  int order_;
  int band_;
  RWindow window_;
  std::vector<JPoly> coeffs_;
};

template <class Index>
NSeries<Index> operator*(const NSeries<Index>& a, const NSeries<Index>& b);

/// ln(1 + x) = sum (-1)^{m+1} x^m / m, truncated. x must be proper with zero
/// constant term.
template <class Index>
NSeries<Index> series_ln1p(const NSeries<Index>& x);

/// exp(x) = sum x^m / m!, truncated. Same precondition as series_ln1p.
template <class Index>
NSeries<Index> series_exp(const NSeries<Index>& x);

/// s^c by repeated squaring; s must have constant term 1.
template <class Index>
NSeries<Index> series_pow_int(const NSeries<Index>& s, unsigned long c);

template <class To, class From>
NSeries<To> relabel(const NSeries<From>& s) {
  NSeries<To> out(s.order(), s.window(), s.band());
  for (int h = -s.band(); h <= s.order(); ++h) out.set(h, s.at(h));
  return out;
}

using JSeries = NSeries<JIndex>;
using ISeries = NSeries<IIndex>;

extern template class NSeries<JIndex>;
extern template class NSeries<IIndex>;

}  // namespace matchdiff
