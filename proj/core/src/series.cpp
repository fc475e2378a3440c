#include "matchdiff/series.hpp"

#include "matchdiff/error.hpp"

#include <algorithm>
#include <sstream>

namespace matchdiff {

template <class Index>
NSeries<Index>::NSeries(int order) : NSeries(order, default_window(order)) {}

template <class Index>
NSeries<Index>::NSeries(int order, RWindow window, int band)
    : order_(order), band_(band), window_(window) {
  if (order < 0) throw DomainError("series order must be non-negative");
  if (band < 0) throw DomainError("series band must be non-negative");
  coeffs_.assign(static_cast<size_t>(order + band + 1), JPoly(window));
}

template <class Index>
NSeries<Index> NSeries<Index>::one(int order) {
  return constant(Rat(1), order);
}

template <class Index>
NSeries<Index> NSeries<Index>::constant(const Rat& c, int order) {
  NSeries out(order);
  out.set(0, JPoly::constant(RLaurent(c, out.window_)));
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::term(const RLaurent& c, int jpow, int npow, int order) {
  NSeries out(order, default_window(order).hull(c.window()));
  if (npow <= order) out.set(npow, JPoly::monomial(c, jpow));
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::from_poly(const JPoly& p, int npow, int order) {
  NSeries out(order, default_window(order).hull(p.window()));
  if (npow <= order) out.set(npow, p);
  return out;
}

template <class Index>
std::optional<int> NSeries<Index>::valuation() const {
  for (int h = -band_; h <= order_; ++h)
    if (!coeffs_[slot(h)].is_zero()) return h;
  return std::nullopt;
}

template <class Index>
bool NSeries<Index>::is_proper() const {
  for (int h = -band_; h < 0; ++h)
    if (!coeffs_[slot(h)].is_zero()) return false;
  return true;
}

template <class Index>
bool NSeries<Index>::has_zero_constant() const {
  return is_proper() && coeffs_[slot(0)].is_zero();
}

template <class Index>
const JPoly& NSeries<Index>::at(int npow) const {
  if (npow > order_)
    throw TruncationError("coefficient of n^-" + std::to_string(npow) + " requested from a series truncated at order " +
                          std::to_string(order_));
  if (npow < -band_) throw DomainError("n-power below the positive band");
  return coeffs_[slot(npow)];
}

template <class Index>
RLaurent NSeries<Index>::coeff(int jpow, int npow) const {
  if (npow < -band_) return RLaurent(window_);
  return at(npow).coeff(jpow).widened(window_);
}

template <class Index>
void NSeries<Index>::check_window(const JPoly& p) const {
  for (const auto& c : p.coeffs())
    if (!c.is_zero() && !window_.contains(RWindow{*c.min_exponent(), *c.max_exponent()}))
      throw WindowOverflow("coefficient exceeds the series r-window [" + std::to_string(window_.lo) + ", " +
                           std::to_string(window_.hi) + "]");
}

template <class Index>
void NSeries<Index>::set(int npow, const JPoly& p) {
  if (!in_range(npow)) {
    if (p.is_zero()) return;
    throw DomainError("n-power " + std::to_string(npow) + " outside series range");
  }
  check_window(p);
  coeffs_[slot(npow)] = p.widened(window_);
}

template <class Index>
void NSeries<Index>::add(int npow, const JPoly& p) {
  if (!in_range(npow)) {
    if (p.is_zero()) return;
    if (npow > order_) return;
    throw DomainError("positive n-power band exceeded (n^" + std::to_string(-npow) + ")");
  }
  JPoly sum = coeffs_[slot(npow)] + p;
  check_window(sum);
  coeffs_[slot(npow)] = sum.widened(window_);
}

template <class Index>
NSeries<Index> NSeries<Index>::truncated(int order) const {
  if (order > order_) throw TruncationError("cannot extend a series beyond its truncation order");
  NSeries out(order, window_, band_);
  for (int h = -band_; h <= order; ++h) out.coeffs_[out.slot(h)] = coeffs_[slot(h)];
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::widened(RWindow window) const {
  if (!window.contains(window_)) throw DomainError("widened() cannot shrink the r-window");
  NSeries out = *this;
  out.window_ = window;
  for (auto& p : out.coeffs_) p = p.widened(window);
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::subst_j(const Int& j0) const {
  NSeries out(order_, window_, band_);
  Rat j(j0);
  for (int h = -band_; h <= order_; ++h) {
    const JPoly& p = coeffs_[slot(h)];
    if (!p.is_zero()) out.coeffs_[slot(h)] = JPoly::constant(p.eval(j));
  }
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::subst_r(const Rat& r0) const {
  if (r0 == 0) throw DomainError("subst_r requires r != 0");
  NSeries out(order_, window_, band_);
  for (int h = -band_; h <= order_; ++h) {
    const JPoly& p = coeffs_[slot(h)];
    if (!p.is_zero()) out.coeffs_[slot(h)] = p.subst_r(r0);
  }
  return out;
}

template <class Index>
NSeries<Index> NSeries<Index>::shift_j(long z) const {
  NSeries out(order_, window_, band_);
  for (int h = -band_; h <= order_; ++h) {
    const JPoly& p = coeffs_[slot(h)];
    if (!p.is_zero()) out.coeffs_[slot(h)] = p.shift(z);
  }
  return out;
}

template <class Index>
void NSeries<Index>::assert_no_positive_powers() const {
  for (int h = -band_; h < 0; ++h)
    if (!coeffs_[slot(h)].is_zero())
      throw DomainError("positive power n^" + std::to_string(-h) + " did not cancel: " +
                        coeffs_[slot(h)].to_string(Index::name));
}

template <class Index>
NSeries<Index>& NSeries<Index>::operator+=(const NSeries& other) {
  int order = std::min(order_, other.order_);
  int band = std::max(band_, other.band_);
  NSeries out(order, window_.hull(other.window_), band);
  for (int h = -band_; h <= order; ++h) out.coeffs_[out.slot(h)] = coeffs_[slot(h)].widened(out.window_);
  for (int h = -other.band_; h <= order; ++h) out.coeffs_[out.slot(h)] += other.coeffs_[other.slot(h)];
  *this = std::move(out);
  return *this;
}

template <class Index>
NSeries<Index>& NSeries<Index>::operator-=(const NSeries& other) {
  return *this += -other;
}

template <class Index>
NSeries<Index>& NSeries<Index>::operator*=(const Rat& scalar) {
  for (auto& p : coeffs_) p *= scalar;
  return *this;
}

template <class Index>
NSeries<Index> NSeries<Index>::operator-() const {
  NSeries out = *this;
  for (auto& p : out.coeffs_) p = -p;
  return out;
}

template <class Index>
bool NSeries<Index>::coeffs_equal(const NSeries& other) const {
  int lo = -std::max(band_, other.band_);
  int hi = std::min(order_, other.order_);
  for (int h = lo; h <= hi; ++h) {
    const JPoly& a = h >= -band_ ? coeffs_[slot(h)] : JPoly();
    const JPoly& b = h >= -other.band_ ? other.coeffs_[other.slot(h)] : JPoly();
    if (!(a == b)) return false;
  }
  return true;
}

template <class Index>
NSeries<Index> operator*(const NSeries<Index>& a, const NSeries<Index>& b) {
  auto va = a.valuation();
  auto vb = b.valuation();
  int order = std::min(a.order_, b.order_);
  if (va && vb) {
    order = std::min(order, a.order_ + *vb);
    order = std::min(order, b.order_ + *va);
  }
  if (order < 0) throw TruncationError("product has no exact coefficients left (positive powers of n)");
  NSeries<Index> out(order, a.window_.hull(b.window_), std::max(a.band_, b.band_));
  if (!va || !vb) return out;
  for (int h1 = *va; h1 <= a.order_; ++h1) {
    const JPoly& pa = a.coeffs_[a.slot(h1)];
    if (pa.is_zero()) continue;
    for (int h2 = *vb; h2 <= b.order_ && h1 + h2 <= order; ++h2) {
      const JPoly& pb = b.coeffs_[b.slot(h2)];
      if (pb.is_zero()) continue;
      out.add(h1 + h2, pa * pb);
    }
  }
  return out;
}

template <class Index>
NSeries<Index> series_ln1p(const NSeries<Index>& x) {
  if (!x.has_zero_constant()) throw DomainError("series_ln1p requires a proper series with zero constant term");
  NSeries<Index> sum(x.order(), x.window(), x.band());
  NSeries<Index> power = x;
  for (int m = 1; m <= x.order(); ++m) {
    if (power.is_zero()) break;
    Rat c(m % 2 == 1 ? 1 : -1, m);
    sum += power * c;
    power = power * x;
  }
  return sum;
}

template <class Index>
NSeries<Index> series_exp(const NSeries<Index>& x) {
  if (!x.has_zero_constant()) throw DomainError("series_exp requires a proper series with zero constant term");
  NSeries<Index> sum = NSeries<Index>::one(x.order()).widened(x.window().hull(NSeries<Index>::default_window(x.order())));
  NSeries<Index> power = x;
  Int fact = 1;
  for (int m = 1; m <= x.order(); ++m) {
    if (power.is_zero()) break;
    fact *= m;
    sum += power * Rat(1, fact);
    power = power * x;
  }
  return sum;
}

template <class Index>
NSeries<Index> series_pow_int(const NSeries<Index>& s, unsigned long c) {
  NSeries<Index> one = NSeries<Index>::one(s.order());
  NSeries<Index> rest = s - one;
  if (!rest.has_zero_constant()) throw DomainError("series_pow_int requires constant term 1");
  NSeries<Index> result = one.widened(s.window().hull(one.window()));
  NSeries<Index> base = s;
  while (c > 0) {
    if (c & 1UL) result = result * base;
    c >>= 1;
    if (c > 0) base = base * base;
  }
  return result;
}

template <class Index>
std::string NSeries<Index>::to_text() const {
  std::ostringstream os;
  os << "nseries H=" << order_ << "\n";
  for (int h = -band_; h <= order_; ++h) {
    const JPoly& p = coeffs_[slot(h)];
    for (int t = 0; t <= p.degree(); ++t) {
      const RLaurent c_t = p.coeff(t);
      for (const auto& [e, c] : c_t.terms()) os << h << " " << t << " " << e << " " << rat_str(c) << "\n";
    }
  }
  return os.str();
}

template <class Index>
NSeries<Index> NSeries<Index>::from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int order = -1;
  struct Term {
    int h, t, e;
    Rat c;
  };
  std::vector<Term> terms;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (order < 0) {
      if (line.rfind("nseries H=", 0) != 0) throw FormatError("expected 'nseries H=<order>' header");
      try {
        order = std::stoi(line.substr(10));
      } catch (const std::exception&) {
        throw FormatError("bad nseries order in '" + line + "'");
      }
      if (order < 0) throw FormatError("negative nseries order");
      continue;
    }
    std::istringstream ls(line);
    Term term;
    std::string rat;
    if (!(ls >> term.h >> term.t >> term.e >> rat) || term.t < 0)
      throw FormatError("malformed nseries term line '" + line + "'");
    term.c = parse_rat(rat);
    terms.push_back(std::move(term));
  }
  if (order < 0) throw FormatError("missing nseries header");
  RWindow window = default_window(order);
  int band = kDefaultBand;
  for (const auto& term : terms) {
    window = window.hull({term.e, term.e});
    band = std::max(band, -term.h);
    if (term.h > order) throw FormatError("term beyond declared order");
  }
  NSeries out(order, window, band);
  for (const auto& term : terms)
    out.add(term.h, JPoly::monomial(RLaurent::monomial(term.c, term.e, window), term.t));
  return out;
}

template <class Index>
std::string NSeries<Index>::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int h = -band_; h <= order_; ++h) {
    const JPoly& p = coeffs_[slot(h)];
    if (p.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << p.to_string(Index::name) << "]";
    if (h != 0) os << "*n^" << -h;
  }
  if (first) os << "0";
  os << " + O(n^-" << order_ + 1 << ")";
  return os.str();
}

template class NSeries<JIndex>;
template class NSeries<IIndex>;

template NSeries<JIndex> operator*(const NSeries<JIndex>&, const NSeries<JIndex>&);
template NSeries<IIndex> operator*(const NSeries<IIndex>&, const NSeries<IIndex>&);
template NSeries<JIndex> series_ln1p(const NSeries<JIndex>&);
template NSeries<IIndex> series_ln1p(const NSeries<IIndex>&);
template NSeries<JIndex> series_exp(const NSeries<JIndex>&);
template NSeries<IIndex> series_exp(const NSeries<IIndex>&);
template NSeries<JIndex> series_pow_int(const NSeries<JIndex>&, unsigned long);
template NSeries<IIndex> series_pow_int(const NSeries<IIndex>&, unsigned long);

}  // namespace matchdiff
