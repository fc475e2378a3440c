#include "matchdiff/identities.hpp"

#include "matchdiff/error.hpp"
#include "matchdiff/kseries.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace matchdiff {

void CheckReport::fail(const std::string& why) {
  pass = false;
  if (!witness.empty()) witness += "; ";
  witness += why;
}

namespace {

std::string field(int v) { return v < 0 ? "-" : std::to_string(v); }

std::string r_field(int r) { return r == 0 ? "sym" : field(r); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string CheckReport::line() const {
  std::ostringstream os;
  os << id << " r=" << r_field(r) << " i=" << field(i) << " k=" << field(k) << " h=" << field(h);
  if (!spec.empty()) os << " spec=" << spec;
  os << (pass ? " PASS" : " FAIL");
  if (!value.empty()) os << " value=" << value;
  if (!pass) os << " [" << witness << "]";
  return os.str();
}

std::string CheckReport::csv_header() { return "id,r,i,k,h,spec,status,value,witness"; }

std::string CheckReport::csv_row() const {
  std::ostringstream os;
  os << id << "," << r_field(r) << "," << field(i) << "," << field(k) << "," << field(h) << "," << csv_escape(spec)
     << "," << (pass ? "PASS" : "FAIL") << "," << csv_escape(value) << "," << csv_escape(witness);
  return os.str();
}

std::pair<std::vector<int>, std::vector<int>> lsplit(int k) {
  if (k < 0) throw DomainError("lsplit requires k >= 0");
  std::vector<int> plus, minus;
  for (int l = 0; l <= k; ++l) (l % 2 == k % 2 ? plus : minus).push_back(l);
  return {plus, minus};
}

namespace {

int sign_of(int l, int k) { return (l + k) % 2 == 0 ? 1 : -1; }

const ISeries& cached_K(int order) {
  static std::mutex mutex;
  static std::map<int, ISeries> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, build_K(order)).first;
  return it->second;
}

// Value of a Laurent expression in r for reports against a table fixed at one r.
RLaurent at_table_r(const ATable& table, const RLaurent& v) {
  if (!table.fixed_r()) return v;
  return RLaurent(v.eval(Rat(*table.fixed_r())), RWindow{0, 0});
}

int report_r(const ATable& table) { return table.fixed_r() ? *table.fixed_r() : 0; }

RLaurent eq35_value(int h) {
  RWindow w{-h, 0};
  RLaurent v(Rat(-2), w);
  v += RLaurent::monomial(Rat(1), -h, w);
  return v * Rat(1, (h + 1) * h);
}

std::string coeff_witness(const char* var, int pow, int npow, const RLaurent& got, const RLaurent& want) {
  std::ostringstream os;
  os << "[" << var << "^" << pow << " n^-" << npow << "] = " << got.to_string() << ", expected " << want.to_string();
  return os.str();
}

Rat scalar_coeff(const JSeries& s, int npow) {
  const JPoly& p = s.at(npow);
  if (p.degree() > 0) throw DomainError("expected a scalar series");
  RLaurent c = p.coeff(0);
  if (c.is_zero()) return 0;
  if (c.min_exponent() != 0 || c.max_exponent() != 0) throw DomainError("expected r-free coefficients");
  return c.coeff(0);
}

Rat first_identity_value(int k, int r) {
  return Rat(factorial(k - 2)) / pow(Rat(r), static_cast<unsigned long>(k - 1));
}

}  // namespace

JSeries build_F(const ATable& table, int h_max) {
  JSeries one = JSeries::one(h_max);
  JSeries h = build_H(table, h_max) + one;
  JSeries k = relabel<JIndex>(cached_K(h_max)) + one;
  return h * k;
}

JSeries F_at(const ATable& table, int r, int i, int order) {
  if (i < 0) throw DomainError("F_at requires i >= 0");
  JSeries h = JSeries::one(order);
  for (int s = 1; s <= order; ++s) {
    auto v = table.value(s, r, i);
    if (!v)
      throw DomainError("insufficient table coverage: a_" + std::to_string(s) + "(r=" + std::to_string(r) +
                        ", j=" + std::to_string(i) + ") unavailable");
    h.add(s, JPoly::constant(RLaurent(*v, RWindow{0, 0})));
  }
  JSeries k = relabel<JIndex>(cached_K(order).subst_j(Int(i))) + JSeries::one(order);
  return h * k;
}

CheckReport check_3_4_3_5(const ATable& table, int h) {
  CheckReport rep;
  rep.id = "eq3.4-3.5";
  rep.h = h;
  rep.r = report_r(table);
  JSeries log = series_ln1p(build_H(table, h));
  const JPoly& p = log.at(h);
  RLaurent want = at_table_r(table, eq35_value(h));
  RLaurent got = p.coeff(h + 1);
  if (!(got == want)) rep.fail(coeff_witness("j", h + 1, h, got, want));
  for (int k = h + 2; k <= p.degree(); ++k)
    if (!p.coeff(k).is_zero()) rep.fail(coeff_witness("j", k, h, p.coeff(k), RLaurent()));
  rep.value = got.to_string();
  rep.extracted.push_back(got);
  return rep;
}

CheckReport check_thm72(const ATable& table, int k) {
  if (k < 2) throw DomainError("check_thm72 requires k >= 2");
  CheckReport rep;
  rep.id = "thm7.2";
  rep.k = k;
  rep.h = k - 1;
  rep.r = report_r(table);
  JSeries f = build_F(table, k - 1);
  JSeries log = series_ln1p(f - JSeries::one(k - 1));
  const JPoly& p = log.at(k - 1);
  RWindow w{-(k - 1), 0};
  RLaurent want = at_table_r(table, RLaurent::monomial(ratio(factorial(k - 2), factorial(k)), -(k - 1), w));
  RLaurent got = p.coeff(k);
  if (!(got == want)) rep.fail(coeff_witness("i", k, k - 1, got, want));
  for (int d = k + 1; d <= p.degree(); ++d)
    if (!p.coeff(d).is_zero()) rep.fail(coeff_witness("i", d, k - 1, p.coeff(d), RLaurent()));
  rep.value = got.to_string();
  rep.extracted.push_back(got);
  return rep;
}

CheckReport check_eq75(const ATable& table) {
  CheckReport rep;
  rep.id = "eq7.5";
  rep.k = 3;
  rep.h = 2;
  rep.r = report_r(table);
  JSeries f = build_F(table, 2);
  JSeries log = series_ln1p(f - JSeries::one(2));
  const JPoly& got = log.at(2);
  // -(1/12) s (3r^2 s - 3r^2 - 12rs - 2s^2 + 12r + 9s - 7) / r^2
  RWindow w{-2, 0};
  auto L = [&](Rat c0, Rat cm1, Rat cm2) {
    RLaurent v(c0, w);
    v += RLaurent::monomial(cm1, -1, w);
    v += RLaurent::monomial(cm2, -2, w);
    return at_table_r(table, v * Rat(-1, 12));
  };
  JPoly want(w);
  want.set_coeff(3, L(0, 0, -2));
  want.set_coeff(2, L(3, -12, 9));
  want.set_coeff(1, L(-3, 12, -7));
  if (!(got == want)) rep.fail("[n^-2] ln F = " + got.to_string("s") + ", expected " + want.to_string("s"));
  rep.value = got.to_string("s");
  return rep;
}

CheckReport check_first_identity(const ATable& table, int r, int i, int k) {
  if (k < 2) throw DomainError("the First Identity needs k >= 2");
  CheckReport rep;
  rep.id = "first-identity";
  rep.r = r;
  rep.i = i;
  rep.k = k;
  rep.h = k - 1;
  Rat total = 0;
  for (int l = 0; l <= k; ++l) {
    JSeries u = F_at(table, r, i + l, k - 1) - JSeries::one(k - 1);
    JSeries sum(k - 1);
    JSeries power = u;
    for (int m = 1; m <= k - 1; ++m) {
      sum += power * Rat(m % 2 == 1 ? 1 : -1, m);
      power = power * u;
    }
    total += Rat(binomial(k, l)) * sign_of(l, k) * scalar_coeff(sum, k - 1);
  }
  Rat want = first_identity_value(k, r);
  if (total != want) rep.fail("sum = " + rat_str(total) + ", expected " + rat_str(want));
  rep.value = rat_str(total);
  return rep;
}

CheckReport check_fd_monomial(int k, int d) {
  if (k < 0 || d < 0 || d > k) throw DomainError("check_fd_monomial requires 0 <= d <= k");
  CheckReport rep;
  rep.id = "fd-monomial";
  rep.k = k;
  rep.spec = "d=" + std::to_string(d);
  Int total = 0;
  for (int l = 0; l <= k; ++l) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(d));
    total += binomial(k, l) * sign_of(l, k) * p;
  }
  Int want = d < k ? Int(0) : factorial(k);
  if (total != want) rep.fail("sum = " + total.get_str() + ", expected " + want.get_str());
  rep.value = total.get_str();
  return rep;
}

JSeries build_t(const ATable& table, int r, int i0, int k, bool plus, int order) {
  auto [lp, lm] = lsplit(k);
  JSeries t(order);
  for (int l : plus ? lp : lm) {
    JSeries u = F_at(table, r, i0 + l, order) - JSeries::one(order);
    t += series_ln1p(u) * Rat(binomial(k, l));
  }
  return t;
}

CheckReport check_t_cancellation(const ATable& table, int r, int i, int k) {
  if (k < 2) throw DomainError("t-cancellation needs k >= 2");
  CheckReport rep;
  rep.id = "t-cancellation";
  rep.r = r;
  rep.i = i;
  rep.k = k;
  rep.h = k - 1;
  JSeries tp = build_t(table, r, i, k, true, k - 1);
  JSeries tm = build_t(table, r, i, k, false, k - 1);
  for (int s = 1; s <= k - 2; ++s) {
    Rat a = scalar_coeff(tp, s), b = scalar_coeff(tm, s);
    if (a != b) rep.fail("[n^-" + std::to_string(s) + "] t+ = " + rat_str(a) + " but t- = " + rat_str(b));
  }
  Rat lead = scalar_coeff(tp, k - 1) - scalar_coeff(tm, k - 1);
  Rat want = first_identity_value(k, r);
  if (lead != want) rep.fail("[n^-" + std::to_string(k - 1) + "](t+ - t-) = " + rat_str(lead) + ", expected " + rat_str(want));
  rep.value = rat_str(lead);
  return rep;
}

namespace {

void second_identity_on(const std::vector<JSeries>& f, int k, CheckReport& rep) {
  auto [lp, lm] = lsplit(k);
  const int order = f.front().order();
  for (int side = 0; side < 2; ++side) {
    const auto& ls = side == 0 ? lp : lm;
    JSeries product = JSeries::one(order);
    JSeries t(order);
    for (int l : ls) {
      product = product * series_pow_int(f[l], binomial(k, l).get_ui());
      t += series_ln1p(f[l] - JSeries::one(order)) * Rat(binomial(k, l));
    }
    JSeries rhs = series_exp(t);
    if (!product.coeffs_equal(rhs)) {
      for (int h = 0; h <= order; ++h)
        if (!(product.at(h) == rhs.at(h))) {
          rep.fail(std::string(side == 0 ? "L+" : "L-") + " [n^-" + std::to_string(h) + "] product " +
                   product.at(h).to_string() + " vs exp(t) " + rhs.at(h).to_string());
          break;
        }
    }
  }
}

}  // namespace

CheckReport check_second_identity(const ATable& table, int r, int i, int k, int order) {
  if (k < 0) throw DomainError("second identity needs k >= 0");
  CheckReport rep;
  rep.id = "second-identity";
  rep.r = r;
  rep.i = i;
  rep.k = k;
  rep.h = order;
  std::vector<JSeries> f;
  for (int l = 0; l <= k; ++l) f.push_back(F_at(table, r, i + l, order));
  second_identity_on(f, k, rep);
  return rep;
}

CheckReport check_second_identity_synthetic(const std::vector<JSeries>& u, int k) {
  if (static_cast<int>(u.size()) != k + 1) throw DomainError("synthetic second identity needs k+1 series");
  CheckReport rep;
  rep.id = "second-identity-synthetic";
  rep.k = k;
  rep.h = u.front().order();
  std::vector<JSeries> f;
  for (const auto& s : u) {
    if (!s.has_zero_constant()) throw DomainError("synthetic U must be proper with zero constant term");
    f.push_back(s + JSeries::one(s.order()));
  }
  second_identity_on(f, k, rep);
  return rep;
}

JSeries random_proper_series(Rng& rng, int order) {
  JSeries s(order);
  const RWindow w = JSeries::default_window(order);
  for (int h = 1; h <= order; ++h) {
    JPoly p(w);
    for (int t = 0; t <= 2; ++t) {
      RLaurent c(w);
      for (int e = -1; e <= 1; ++e) {
        if (rng.below(2) == 0) continue;
        long num = static_cast<long>(rng.below(19)) - 9;
        long den = static_cast<long>(rng.below(6)) + 1;
        c += RLaurent::monomial(ratio(num, den), e, w);
      }
      p.set_coeff(t, c);
    }
    s.set(h, p);
  }
  return s;
}

JSeries alpha0_series(const ATable& table, int r, int i, int k, int order) {
  auto [lp, lm] = lsplit(k);
  JSeries plus = JSeries::one(order), minus = JSeries::one(order);
  for (int l : lp) plus = plus * series_pow_int(F_at(table, r, i + l, order), binomial(k, l).get_ui());
  for (int l : lm) minus = minus * series_pow_int(F_at(table, r, i + l, order), binomial(k, l).get_ui());
  return plus - minus;
}

CheckReport check_alpha0_series(const ATable& table, int r, int i, int k, int extra_order) {
  if (k < 0) throw DomainError("alpha0 needs k >= 0");
  CheckReport rep;
  rep.id = "alpha0";
  rep.r = r;
  rep.i = i;
  rep.k = k;
  const int lead = std::max(k - 1, 1);
  const int order = lead + extra_order;
  rep.h = lead;
  JSeries a = alpha0_series(table, r, i, k, order);
  Rat want;
  if (k == 0) {
    want = ratio(i * (i - 1), 2 * r);
    rep.spec = "literal-empty-product";
  } else if (k == 1) {
    want = ratio(i, r);
  } else {
    want = first_identity_value(k, r);
  }
  for (int d = 0; d < lead; ++d)
    if (scalar_coeff(a, d) != 0) rep.fail("[n^-" + std::to_string(d) + "] alpha0 = " + rat_str(scalar_coeff(a, d)));
  Rat got = scalar_coeff(a, lead);
  if (got != want) rep.fail("[n^-" + std::to_string(lead) + "] alpha0 = " + rat_str(got) + ", expected " + rat_str(want));
  rep.value = rat_str(got);
  return rep;
}

CheckReport check_conjecture10(const ATable& table, const ConjectureSpec& spec, int h_max) {
  CheckReport rep;
  rep.id = "conjecture10";
  rep.h = h_max;
  rep.r = report_r(table);
  rep.spec = spec.to_string();
  JSeries f = build_F_conjecture(table, spec, h_max);
  JSeries log = series_ln1p(f - JSeries::one(h_max));
  std::ostringstream values;
  for (int h = 1; h <= h_max; ++h) {
    const JPoly& p = log.at(h);
    for (int k = h + 2; k <= p.degree(); ++k)
      if (!p.coeff(k).is_zero()) rep.fail(coeff_witness("j", k, h, p.coeff(k), RLaurent()));
    RLaurent want = at_table_r(table, eq35_value(h));
    RLaurent got = p.coeff(h + 1);
    if (!(got == want)) rep.fail(coeff_witness("j", h + 1, h, got, want));
    rep.extracted.push_back(got);
    values << (h > 1 ? "; " : "") << "h" << h << ":" << got.to_string();
  }
  rep.value = values.str();
  return rep;
}

ConjectureSpec random_conjecture_spec(Rng& rng, int z_max) {
  if (z_max < 1) throw DomainError("random_conjecture_spec needs z_max >= 1");
  ConjectureSpec spec;
  int terms = 1 + static_cast<int>(rng.below(2));
  for (int t = 0; t < terms; ++t) {
    int z = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(z_max)));
    long p = 0;
    while (p == 0) p = static_cast<long>(rng.below(41)) - 20;
    long q = 1 + static_cast<long>(rng.below(12));
    spec.terms.push_back({z, ratio(p, q)});
  }
  return spec;
}

// ---------------------------------------------------------------- suite

namespace {

bool wanted(const SuiteOptions& opt, const std::string& id) {
  return opt.ids.empty() || std::find(opt.ids.begin(), opt.ids.end(), id) != opt.ids.end();
}

template <class Fn>
void guarded(std::vector<CheckReport>& out, CheckReport proto, Fn&& fn) {
  try {
    out.push_back(fn());
  } catch (const Error& e) {
    proto.fail(e.what());
    out.push_back(proto);
  }
}

}  // namespace

std::vector<CheckReport> run_core_suite(const ATable& table, const SuiteOptions& opt) {
  std::vector<CheckReport> out;
  const int sym = table.symbolic_through();
  std::optional<ATable> point;
  try {
    point = table.at_r(opt.pointwise_r);
  } catch (const Error&) {
  }
  auto proto = [](std::string id, int r, int i, int k, int h) {
    CheckReport p;
    p.id = std::move(id);
    p.r = r;
    p.i = i;
    p.k = k;
    p.h = h;
    return p;
  };
  auto pointwise_table = [&]() -> const ATable& {
    if (!point) throw DomainError("no pointwise data at r=" + std::to_string(opt.pointwise_r));
    return *point;
  };

  if (wanted(opt, "eq3.4-3.5")) {
    for (int h = 1; h <= std::min(sym, 2); ++h) guarded(out, proto("eq3.4-3.5", 0, -1, -1, h), [&] { return check_3_4_3_5(table, h); });
    guarded(out, proto("eq3.4-3.5", opt.pointwise_r, -1, -1, 3), [&] { return check_3_4_3_5(pointwise_table(), 3); });
  }
  if (wanted(opt, "thm7.2")) {
    for (int k = 2; k <= 3; ++k) guarded(out, proto("thm7.2", 0, -1, k, k - 1), [&] { return check_thm72(table, k); });
    guarded(out, proto("thm7.2", opt.pointwise_r, -1, 4, 3), [&] { return check_thm72(pointwise_table(), 4); });
  }
  if (wanted(opt, "eq7.5")) guarded(out, proto("eq7.5", 0, -1, 3, 2), [&] { return check_eq75(table); });
  if (wanted(opt, "fd-monomial"))
    for (int k = 1; k <= opt.k_max; ++k)
      for (int d = 0; d <= k; ++d) out.push_back(check_fd_monomial(k, d));
  if (wanted(opt, "first-identity")) {
    for (int r : opt.r_list)
      for (int k = 2; k <= std::min(3, opt.k_max); ++k)
        for (int i = 0; i <= opt.i_max; ++i)
          guarded(out, proto("first-identity", r, i, k, k - 1), [&] { return check_first_identity(table, r, i, k); });
    if (opt.k_max >= 4)
      for (int i = 0; i <= opt.i_max; ++i)
        guarded(out, proto("first-identity", opt.pointwise_r, i, 4, 3), [&] {
          return i == 0 ? check_first_identity(table, opt.pointwise_r, i, 4)
                        : check_first_identity(pointwise_table(), opt.pointwise_r, i, 4);
        });
  }
  if (wanted(opt, "alpha0"))
    for (int r : opt.r_list)
      for (int k = 0; k <= std::min(3, opt.k_max); ++k)
        for (int i = 0; i <= opt.i_max; ++i)
          guarded(out, proto("alpha0", r, i, k, std::max(k - 1, 1)), [&] { return check_alpha0_series(table, r, i, k); });
  if (wanted(opt, "t-cancellation")) {
    for (int r : opt.r_list)
      for (int i = 0; i <= opt.i_max; ++i)
        guarded(out, proto("t-cancellation", r, i, 3, 2), [&] { return check_t_cancellation(table, r, i, 3); });
    if (opt.k_max >= 4)
      for (int i = 0; i <= opt.i_max; ++i)
        guarded(out, proto("t-cancellation", opt.pointwise_r, i, 4, 3),
                [&] { return check_t_cancellation(pointwise_table(), opt.pointwise_r, i, 4); });
  }
  if (wanted(opt, "second-identity"))
    for (int r : opt.r_list)
      for (int k = 0; k <= opt.k_max; ++k)
        for (int i = 0; i <= opt.i_max; ++i)
          guarded(out, proto("second-identity", r, i, k, 2), [&] { return check_second_identity(table, r, i, k, 2); });
  if (wanted(opt, "conjecture10")) {
    guarded(out, proto("conjecture10", 0, -1, -1, 2), [&] { return check_conjecture10(table, {}, std::min(sym, 2)); });
    guarded(out, proto("conjecture10", opt.pointwise_r, -1, -1, 3), [&] { return check_conjecture10(pointwise_table(), {}, 3); });
  }
  return out;
}

}  // namespace matchdiff
