#include "toporna/series.hpp"

#include <algorithm>
#include <sstream>

namespace toporna {

namespace {

constexpr std::size_t kParallelThreshold = 48;

void require_same_order(const TruncatedSeries& a, const TruncatedSeries& b, const char* what) {
  if (a.order() != b.order()) {
    std::ostringstream os;
    os << what << ": order mismatch (" << a.order() << " vs " << b.order() << ")";
    throw SeriesError(os.str());
  }
}

// Least common multiple of all denominators, so that lcm * s is integral.
Integer denominator_lcm(std::span<const Rational> s) {
  Integer l = 1;
  for (const auto& q : s) {
    if (q.get_den() != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  }
  return l;
}

std::vector<Integer> scaled_numerators(std::span<const Rational> s, const Integer& scale) {
  std::vector<Integer> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (sgn(s[i]) == 0) continue;
    out[i] = s[i].get_num() * (scale / s[i].get_den());
  }
  return out;
}

// out[k] = sum_i a[i] b[k-i] over integers, restricted to the nonzero ranges.
void integer_convolution(const std::vector<Integer>& a, const std::vector<Integer>& b,
                         std::size_t va, std::size_t vb, std::vector<Integer>& out,
                         bool parallel) {
  const std::size_t n = out.size();
  const std::size_t lo = va + vb;
  if (lo >= n) return;
  const auto body = [&](std::size_t k) {
    Integer acc = 0;
    for (std::size_t i = va; i + vb <= k; ++i) {
      mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[k - i].get_mpz_t());
    }
    out[k] = std::move(acc);
  };
  if (parallel) {
    const auto count = static_cast<long>(n - lo);
#pragma omp parallel for schedule(dynamic, 4)
    for (long t = 0; t < count; ++t) body(lo + static_cast<std::size_t>(t));
  } else {
    for (std::size_t k = lo; k < n; ++k) body(k);
  }
}

TruncatedSeries multiply(const TruncatedSeries& a, const TruncatedSeries& b, bool parallel) {
  require_same_order(a, b, "ts_mul");
  const std::size_t n = a.order();
  const std::size_t va = a.valuation();
  const std::size_t vb = b.valuation();
  TruncatedSeries out(n);
  if (va + vb >= n) return out;
  const Integer la = denominator_lcm(a.coeffs());
  const Integer lb = denominator_lcm(b.coeffs());
  const auto an = scaled_numerators(a.coeffs(), la);
  const auto bn = scaled_numerators(b.coeffs(), lb);
  std::vector<Integer> prod(n);
  integer_convolution(an, bn, va, vb, prod, parallel);
  const Integer denom = la * lb;
  for (std::size_t k = va + vb; k < n; ++k) {
    Rational q(prod[k], denom);
    if (denom != 1) q.canonicalize();
    out[k] = std::move(q);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { normalize(); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

int Polynomial::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return static_cast<int>(i);
  }
  return -1;
}

Rational Polynomial::operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

Rational Polynomial::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return Polynomial(std::move(d));
}

bool Polynomial::has_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  for (auto& q : c_) q *= s;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(out));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) == 0) continue;
    Rational c = c_[i];
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    c = abs(c);
    const bool unit = (c == 1);
    if (i == 0) os << c.get_str();
    else {
      if (!unit) os << c.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result{Rational(1)};
  for (unsigned i = 0; i < e; ++i) result = result * p;
  return result;
}

// ----------------------------------------------------------- TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t order) : c_(order) {}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, std::size_t order)
    : c_(std::move(coeffs)) {
  c_.resize(order);
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, std::size_t order) {
  TruncatedSeries s(order);
  if (order > 0) s.c_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, std::size_t degree, std::size_t order) {
  TruncatedSeries s(order);
  if (degree < order) s.c_[degree] = c;
  return s;
}

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& p, std::size_t order) {
  TruncatedSeries s(order);
  for (std::size_t i = 0; i < std::min(order, p.coeffs().size()); ++i) s.c_[i] = p.coeffs()[i];
  return s;
}

TruncatedSeries TruncatedSeries::from_integers(std::span<const Integer> coeffs, std::size_t order) {
  TruncatedSeries s(order);
  for (std::size_t i = 0; i < std::min(order, coeffs.size()); ++i) s.c_[i] = Rational(coeffs[i]);
  return s;
}

std::size_t TruncatedSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (sgn(c_[i]) != 0) return i;
  }
  return c_.size();
}

bool TruncatedSeries::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  require_same_order(*this, o, "ts_add");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  require_same_order(*this, o, "ts_sub");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& s) {
  for (auto& q : c_) q *= s;
  return *this;
}

TruncatedSeries operator-(TruncatedSeries a) {
  for (auto& q : a.c_) q = -q;
  return a;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply(a, b, a.order() >= kParallelThreshold);
}

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) { return ts_div(a, b); }

std::string TruncatedSeries::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

TruncatedSeries mul_serial(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply(a, b, false);
}

TruncatedSeries mul_parallel(const TruncatedSeries& a, const TruncatedSeries& b) {
  return multiply(a, b, true);
}

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b) { return a + b; }

TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries ts_div(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_order(a, b, "ts_div");
  const std::size_t n = a.order();
  if (n == 0) return TruncatedSeries(0);
  if (sgn(b[0]) == 0) throw SeriesError("ts_div: divisor has zero constant term");
  TruncatedSeries q(n);
  if (a.is_integral() && b.is_integral() && abs(b[0]) == 1) {
    // Unit constant term keeps every quotient coefficient integral.
    std::vector<Integer> an(n), bn(n), qn(n);
    for (std::size_t i = 0; i < n; ++i) {
      an[i] = a[i].get_num();
      bn[i] = b[i].get_num();
    }
    const bool negate = sgn(bn[0]) < 0;
    for (std::size_t k = 0; k < n; ++k) {
      Integer acc = an[k];
      for (std::size_t i = 0; i < k; ++i) {
        if (sgn(bn[k - i]) == 0) continue;
        mpz_submul(acc.get_mpz_t(), qn[i].get_mpz_t(), bn[k - i].get_mpz_t());
      }
      qn[k] = negate ? Integer(-acc) : acc;
      q[k] = Rational(qn[k]);
    }
    return q;
  }
  const Rational inv = 1 / b[0];
  for (std::size_t k = 0; k < n; ++k) {
    Rational acc = a[k];
    for (std::size_t i = 0; i < k; ++i) {
      if (sgn(b[k - i]) == 0 || sgn(q[i]) == 0) continue;
      acc -= q[i] * b[k - i];
    }
    q[k] = acc * inv;
  }
  return q;
}

TruncatedSeries ts_compose(const TruncatedSeries& f, const TruncatedSeries& g) {
  require_same_order(f, g, "ts_compose");
  const std::size_t n = f.order();
  if (n == 0) return TruncatedSeries(0);
  if (sgn(g[0]) != 0) throw SeriesError("ts_compose: inner series has nonzero constant term");
  TruncatedSeries result = TruncatedSeries::constant(f[n - 1], n);
  for (std::size_t i = n - 1; i-- > 0;) {
    result = result * g;
    result[0] += f[i];
  }
  return result;
}

TruncatedSeries ts_compose(const Polynomial& p, const TruncatedSeries& g) {
  const std::size_t n = g.order();
  if (p.is_zero()) return TruncatedSeries(n);
  const auto& c = p.coeffs();
  TruncatedSeries result = TruncatedSeries::constant(c.back(), n);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    result = result * g;
    if (n > 0) result[0] += c[i];
  }
  return result;
}

TruncatedSeries ts_sqrt(const TruncatedSeries& f) {
  const std::size_t n = f.order();
  if (n == 0) return TruncatedSeries(0);
  if (f[0] != 1) throw SeriesError("ts_sqrt: constant term must be 1");
  TruncatedSeries s(n);
  s[0] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    // s_k = (f_k - sum_{i=1}^{k-1} s_i s_{k-i}) / 2, summing each symmetric pair once.
    Rational acc = 0;
    for (std::size_t i = 1; 2 * i < k; ++i) acc += s[i] * s[k - i];
    acc *= 2;
    if (k % 2 == 0) acc += s[k / 2] * s[k / 2];
    s[k] = (f[k] - acc) / 2;
  }
  return s;
}

TruncatedSeries ts_pow(const TruncatedSeries& f, unsigned e) {
  TruncatedSeries result = TruncatedSeries::constant(1, f.order());
  TruncatedSeries base = f;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

TruncatedSeries derivative(const TruncatedSeries& f) {
  const std::size_t n = f.order();
  if (n == 0) return TruncatedSeries(0);
  TruncatedSeries d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) d[k] = f[k + 1] * static_cast<long>(k + 1);
  return d;
}

TruncatedSeries divide_by_x_power(const TruncatedSeries& f, std::size_t k) {
  if (k > f.order()) throw SeriesError("divide_by_x_power: shift exceeds order");
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(f[i]) != 0) {
      throw SeriesError("divide_by_x_power: coefficient of x^" + std::to_string(i) +
                        " does not vanish");
    }
  }
  std::vector<Rational> c(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end());
  const std::size_t order = c.size();
  return TruncatedSeries(std::move(c), order);
}

TruncatedSeries truncate(const TruncatedSeries& f, std::size_t order) {
  if (order > f.order()) throw SeriesError("truncate: requested order exceeds available order");
  std::vector<Rational> c(f.coeffs().begin(), f.coeffs().begin() + static_cast<long>(order));
  return TruncatedSeries(std::move(c), order);
}

TruncatedSeries puiseux_expand(unsigned n, std::size_t order) {
  // (1-4x)^{-1/2} = sum C(2k,k) x^k and (1-4x)^{-n} = sum C(n+k-1,k) 4^k x^k.
  std::vector<Rational> half(order), whole(order);
  Integer binom;
  for (std::size_t k = 0; k < order; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), 2 * k, k);
    half[k] = Rational(binom);
    if (n == 0) {
      whole[k] = (k == 0) ? 1 : 0;
    } else {
      mpz_bin_uiui(binom.get_mpz_t(), n + k - 1, k);
      Integer four_k;
      mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
      whole[k] = Rational(binom * four_k);
    }
  }
  return TruncatedSeries(std::move(half), order) * TruncatedSeries(std::move(whole), order);
}

// ---------------------------------------------------------------------- YJet

YJet::YJet(TruncatedSeries value, TruncatedSeries d1, TruncatedSeries d2)
    : value_(std::move(value)), d1_(std::move(d1)), d2_(std::move(d2)) {
  if (value_.order() != d1_.order() || value_.order() != d2_.order()) {
    throw SeriesError("YJet: components must share one order");
  }
}

YJet YJet::constant(const TruncatedSeries& value) {
  return YJet(value, TruncatedSeries(value.order()), TruncatedSeries(value.order()));
}

YJet YJet::constant(const Rational& c, std::size_t order) {
  return constant(TruncatedSeries::constant(c, order));
}

YJet YJet::monomial(const Rational& c, std::size_t xpow, unsigned ypow, std::size_t order,
                    const Rational& y0) {
  // d/dy y^b = b y^{b-1}; d^2/dy^2 y^b = b(b-1) y^{b-2}
  auto ypower = [&](long e) {
    Rational p = 1;
    if (e >= 0) {
      for (long i = 0; i < e; ++i) p *= y0;
    }
    return p;
  };
  const long b = ypow;
  const Rational v = c * ypower(b);
  const Rational d1 = b >= 1 ? c * b * ypower(b - 1) : Rational(0);
  const Rational d2 = b >= 2 ? c * b * (b - 1) * ypower(b - 2) : Rational(0);
  return YJet(TruncatedSeries::monomial(v, xpow, order), TruncatedSeries::monomial(d1, xpow, order),
              TruncatedSeries::monomial(d2, xpow, order));
}

YJet YJet::variable_y(std::size_t order, const Rational& y0) { return monomial(1, 0, 1, order, y0); }

YJet& YJet::operator+=(const YJet& o) {
  value_ += o.value_;
  d1_ += o.d1_;
  d2_ += o.d2_;
  return *this;
}

YJet& YJet::operator-=(const YJet& o) {
  value_ -= o.value_;
  d1_ -= o.d1_;
  d2_ -= o.d2_;
  return *this;
}

YJet& YJet::operator*=(const Rational& s) {
  value_ *= s;
  d1_ *= s;
  d2_ *= s;
  return *this;
}

YJet operator*(const YJet& a, const YJet& b) {
  TruncatedSeries v = a.value_ * b.value_;
  TruncatedSeries d1 = a.d1_ * b.value_ + a.value_ * b.d1_;
  TruncatedSeries d2 = a.d2_ * b.value_ + a.value_ * b.d2_;
  if (!a.d1_.is_zero() && !b.d1_.is_zero()) d2 += (a.d1_ * b.d1_) * Rational(2);
  return YJet(std::move(v), std::move(d1), std::move(d2));
}

YJet operator/(const YJet& a, const YJet& b) {
  TruncatedSeries q = a.value_ / b.value_;
  TruncatedSeries q1 = (a.d1_ - q * b.d1_) / b.value_;
  TruncatedSeries num2 = a.d2_ - q * b.d2_;
  if (!b.d1_.is_zero()) num2 -= (q1 * b.d1_) * Rational(2);
  TruncatedSeries q2 = num2 / b.value_;
  return YJet(std::move(q), std::move(q1), std::move(q2));
}

YJet jet_arith(const YJet& a, const YJet& b, JetOp op) {
  switch (op) {
    case JetOp::Add: return a + b;
    case JetOp::Sub: return a - b;
    case JetOp::Mul: return a * b;
    case JetOp::Div: return a / b;
  }
  throw SeriesError("jet_arith: unknown operation");
}

YJet jet_sqrt(const YJet& f) {
  TruncatedSeries s = ts_sqrt(f.value());
  TruncatedSeries two_s = s * Rational(2);
  TruncatedSeries s1 = f.d1() / two_s;
  TruncatedSeries s2 = (f.d2() - (s1 * s1) * Rational(2)) / two_s;
  return YJet(std::move(s), std::move(s1), std::move(s2));
}

YJet jet_pow(const YJet& f, unsigned e) {
  YJet result = YJet::constant(1, f.order());
  for (unsigned i = 0; i < e; ++i) result = result * f;
  return result;
}

YJet jet_compose(const Polynomial& p, const YJet& g) {
  const std::size_t n = g.order();
  if (p.is_zero()) return YJet::constant(0, n);
  const auto& c = p.coeffs();
  YJet result = YJet::constant(c.back(), n);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    result = result * g + YJet::constant(c[i], n);
  }
  return result;
}

YJet jet_compose(const TruncatedSeries& f, const YJet& g) {
  const std::size_t n = g.order();
  if (f.order() < n + 2) {
    throw SeriesError("jet_compose: outer series needs two extra orders for its derivatives");
  }
  const TruncatedSeries f0 = truncate(f, n);
  const TruncatedSeries f1 = truncate(derivative(f), n);
  const TruncatedSeries f2 = truncate(derivative(derivative(f)), n);
  TruncatedSeries v = ts_compose(f0, g.value());
  TruncatedSeries fp = ts_compose(f1, g.value());
  TruncatedSeries d1 = fp * g.d1();
  TruncatedSeries d2 = ts_compose(f2, g.value()) * (g.d1() * g.d1()) + fp * g.d2();
  return YJet(std::move(v), std::move(d1), std::move(d2));
}

YJet divide_by_x_power(const YJet& f, std::size_t k) {
  return YJet(divide_by_x_power(f.value(), k), divide_by_x_power(f.d1(), k),
              divide_by_x_power(f.d2(), k));
}

YJet truncate(const YJet& f, std::size_t order) {
  return YJet(truncate(f.value(), order), truncate(f.d1(), order), truncate(f.d2(), order));
}

}  // namespace toporna
