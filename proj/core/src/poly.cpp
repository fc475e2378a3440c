#include "matchdiff/poly.hpp"

#include "matchdiff/error.hpp"

#include <algorithm>
#include <sstream>

namespace matchdiff {

namespace {

[[noreturn]] void overflow(int exponent, RWindow w) {
  std::ostringstream os;
  os << "r-exponent " << exponent << " outside Laurent window [" << w.lo << ", " << w.hi << "]";
  throw WindowOverflow(os.str());
}

}  // namespace

// ---------------------------------------------------------------- RLaurent

RLaurent::RLaurent(RWindow window) : window_(window) {}

RLaurent::RLaurent(const Rat& constant, RWindow window) : window_(window) { add_term(0, constant); }

RLaurent RLaurent::monomial(const Rat& c, int exponent, RWindow window) {
  RLaurent out(window);
  out.add_term(exponent, c);
  return out;
}

RLaurent RLaurent::widened(RWindow window) const {
  if (!window.contains(window_)) throw DomainError("widened() cannot shrink a Laurent window");
  RLaurent out = *this;
  out.window_ = window;
  return out;
}

void RLaurent::add_term(int exponent, const Rat& c) {
  if (c == 0) return;
  if (!window_.contains(exponent)) overflow(exponent, window_);
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rat RLaurent::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::optional<int> RLaurent::min_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<int> RLaurent::max_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

Rat RLaurent::eval(const Rat& r) const {
  if (r == 0 && min_exponent().value_or(0) < 0) throw DomainError("evaluating a negative r-power at r = 0");
  Rat sum = 0;
  for (const auto& [e, c] : terms_) sum += c * pow(r, static_cast<long>(e));
  return sum;
}

RLaurent& RLaurent::operator+=(const RLaurent& other) {
  window_ = window_.hull(other.window_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

RLaurent& RLaurent::operator-=(const RLaurent& other) {
  window_ = window_.hull(other.window_);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

RLaurent& RLaurent::operator*=(const Rat& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

RLaurent RLaurent::operator-() const {
  RLaurent out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

RLaurent operator*(const RLaurent& a, const RLaurent& b) {
  RLaurent out(a.window_.hull(b.window_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  return out;
}

std::string RLaurent::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << "r";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- JPoly

JPoly::JPoly(RWindow window, int degree_bound) : window_(window), degree_bound_(degree_bound) {
  if (degree_bound < 0 || degree_bound > kMaxDegree) throw DomainError("JPoly degree bound out of range");
}

JPoly JPoly::constant(const RLaurent& c, int degree_bound) { return monomial(c, 0, degree_bound); }

JPoly JPoly::monomial(const RLaurent& c, int jpow, int degree_bound) {
  JPoly out(c.window(), degree_bound);
  out.set_coeff(jpow, c);
  return out;
}

JPoly JPoly::falling_factorial(int count, const RLaurent& c) {
  JPoly out = constant(c);
  RLaurent one(Rat(1), c.window());
  for (int t = 0; t < count; ++t) {
    JPoly factor(c.window());
    factor.set_coeff(1, one);
    factor.set_coeff(0, RLaurent(Rat(-t), c.window()));
    out = out * factor;
  }
  return out;
}

RLaurent JPoly::coeff(int jpow) const {
  if (jpow < 0 || jpow >= static_cast<int>(coeffs_.size())) return RLaurent(window_);
  return coeffs_[jpow];
}

void JPoly::set_coeff(int jpow, const RLaurent& c) {
  if (jpow < 0) throw DomainError("negative j-power");
  if (jpow > degree_bound_) {
    if (c.is_zero()) return;
    throw DomainError("j-degree " + std::to_string(jpow) + " exceeds bound " + std::to_string(degree_bound_));
  }
  window_ = window_.hull(c.window());
  if (jpow >= static_cast<int>(coeffs_.size())) {
    if (c.is_zero()) return;
    coeffs_.resize(jpow + 1, RLaurent(window_));
  }
  coeffs_[jpow] = c;
  trim();
}

JPoly JPoly::with_degree_bound(int bound) const {
  if (degree() > bound) throw DomainError("polynomial degree exceeds requested bound");
  JPoly out = *this;
  out.degree_bound_ = bound;
  return out;
}

JPoly JPoly::widened(RWindow window) const {
  JPoly out = *this;
  out.window_ = window_.hull(window);
  for (auto& c : out.coeffs_) c = c.widened(c.window().hull(out.window_));
  return out;
}

void JPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

RLaurent JPoly::eval(const Rat& j) const {
  RLaurent acc(window_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= j;
    acc += *it;
  }
  return acc;
}

Rat JPoly::eval(const Rat& j, const Rat& r) const { return eval(j).eval(r); }

JPoly JPoly::subst_r(const Rat& r) const {
  if (r == 0) throw DomainError("subst_r at r = 0");
  JPoly out(window_, degree_bound_);
  for (int t = 0; t < static_cast<int>(coeffs_.size()); ++t)
    out.set_coeff(t, RLaurent(coeffs_[t].eval(r), window_.hull({0, 0})));
  return out;
}

JPoly JPoly::shift(long z) const {
  if (z == 0) return *this;
  JPoly out(window_, degree_bound_);
  std::vector<RLaurent> acc(coeffs_.size(), RLaurent(window_));
  Rat minus_z = -z;
  for (int t = 0; t < static_cast<int>(coeffs_.size()); ++t) {
    if (coeffs_[t].is_zero()) continue;
    for (int s = 0; s <= t; ++s) {
      Rat w = Rat(binomial(t, s)) * pow(minus_z, static_cast<unsigned long>(t - s));
      acc[s] += coeffs_[t] * w;
    }
  }
  for (int s = 0; s < static_cast<int>(acc.size()); ++s) out.set_coeff(s, acc[s]);
  return out;
}

JPoly& JPoly::operator+=(const JPoly& other) {
  degree_bound_ = std::max(degree_bound_, other.degree_bound_);
  window_ = window_.hull(other.window_);
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), RLaurent(window_));
  for (size_t t = 0; t < other.coeffs_.size(); ++t) coeffs_[t] += other.coeffs_[t];
  trim();
  return *this;
}

JPoly& JPoly::operator-=(const JPoly& other) {
  degree_bound_ = std::max(degree_bound_, other.degree_bound_);
  window_ = window_.hull(other.window_);
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), RLaurent(window_));
  for (size_t t = 0; t < other.coeffs_.size(); ++t) coeffs_[t] -= other.coeffs_[t];
  trim();
  return *this;
}

JPoly& JPoly::operator*=(const Rat& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  trim();
  return *this;
}

JPoly& JPoly::operator*=(const RLaurent& scalar) {
  window_ = window_.hull(scalar.window());
  for (auto& c : coeffs_) c = c * scalar;
  trim();
  return *this;
}

JPoly JPoly::operator-() const {
  JPoly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

JPoly operator*(const JPoly& a, const JPoly& b) {
  JPoly out(a.window_.hull(b.window_), std::min(JPoly::kMaxDegree, a.degree_bound_ + b.degree_bound_));
  if (a.is_zero() || b.is_zero()) return out;
  int deg = a.degree() + b.degree();
  if (deg > out.degree_bound_)
    throw DomainError("j-degree " + std::to_string(deg) + " exceeds bound " + std::to_string(out.degree_bound_));
  out.coeffs_.assign(deg + 1, RLaurent(out.window_));
  for (size_t s = 0; s < a.coeffs_.size(); ++s) {
    if (a.coeffs_[s].is_zero()) continue;
    for (size_t t = 0; t < b.coeffs_.size(); ++t) {
      if (b.coeffs_[t].is_zero()) continue;
      out.coeffs_[s + t] += a.coeffs_[s] * b.coeffs_[t];
    }
  }
  out.trim();
  return out;
}

std::string JPoly::to_string(const char* var) const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int t = degree(); t >= 0; --t) {
    if (coeffs_[t].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << coeffs_[t].to_string() << ")";
    if (t > 0) os << "*" << var;
    if (t > 1) os << "^" << t;
  }
  return os.str();
}

}  // namespace matchdiff
