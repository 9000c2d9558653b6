#pragma once

// Exact truncated power series over the rationals, plus second-order y-jets.
//
// A TruncatedSeries of order N stores the coefficients of x^0 .. x^{N-1}.
// The order is fixed at construction and every binary operation requires
// equal orders; mixing orders throws instead of truncating silently.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toporna {

using Integer = mpz_class;
using Rational = mpq_class;

class SeriesError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Univariate polynomial with rational coefficients in ascending degree.
/// The zero polynomial has no stored coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return c_.empty(); }
  /// Degree of the polynomial; -1 for zero.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Lowest exponent with nonzero coefficient; -1 for zero.
  int valuation() const;
  /// Coefficient of x^k (zero beyond the degree).
  Rational operator[](std::size_t k) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  Polynomial derivative() const;
  bool has_integer_coefficients() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();
  std::vector<Rational> c_;
};

Polynomial pow(const Polynomial& p, unsigned e);

class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  /// Zero series of the given order.
  explicit TruncatedSeries(std::size_t order);
  /// Coefficients are padded with zeros or truncated to `order`.
  TruncatedSeries(std::vector<Rational> coeffs, std::size_t order);

  static TruncatedSeries constant(const Rational& c, std::size_t order);
  static TruncatedSeries monomial(const Rational& c, std::size_t degree, std::size_t order);
  static TruncatedSeries from_polynomial(const Polynomial& p, std::size_t order);
  static TruncatedSeries from_integers(std::span<const Integer> coeffs, std::size_t order);

  std::size_t order() const { return c_.size(); }
  const Rational& operator[](std::size_t k) const { return c_.at(k); }
  Rational& operator[](std::size_t k) { return c_.at(k); }
  std::span<const Rational> coeffs() const { return c_; }

  /// Index of the first nonzero coefficient, or order() if the series is zero.
  std::size_t valuation() const;
  bool is_zero() const { return valuation() == order(); }
  bool is_integral() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& s) { return a *= s; }
  friend TruncatedSeries operator*(const Rational& s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  std::vector<Rational> c_;
};

// Cauchy-product kernels. mul_serial is the reference; mul_parallel splits the
// output coefficients across OpenMP threads. Both must produce identical
// results. operator* dispatches to the parallel kernel above a size threshold.
TruncatedSeries mul_serial(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries mul_parallel(const TruncatedSeries& a, const TruncatedSeries& b);

TruncatedSeries ts_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries ts_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// q with q*b = a to the shared order. b must have nonzero constant term.
TruncatedSeries ts_div(const TruncatedSeries& a, const TruncatedSeries& b);
/// f(g(x)) by Horner's rule over series. g must have zero constant term.
TruncatedSeries ts_compose(const TruncatedSeries& f, const TruncatedSeries& g);
/// p(g(x)) for a polynomial p; g may have any constant term.
TruncatedSeries ts_compose(const Polynomial& p, const TruncatedSeries& g);
/// Square root with constant term 1. f must have constant term exactly 1.
TruncatedSeries ts_sqrt(const TruncatedSeries& f);
TruncatedSeries ts_pow(const TruncatedSeries& f, unsigned e);
TruncatedSeries derivative(const TruncatedSeries& f);

/// Divides by x^k. The first k coefficients must vanish; the result has order
/// order() - k.
TruncatedSeries divide_by_x_power(const TruncatedSeries& f, std::size_t k);
/// Restricts to a smaller order.
TruncatedSeries truncate(const TruncatedSeries& f, std::size_t order);

/// (1-4x)^{-(n+1/2)} to the given order. All coefficients are integers.
TruncatedSeries puiseux_expand(unsigned n, std::size_t order);

/// Value, first and second y-derivative of a series in (x, y), taken at a base
/// point y0 (normally y0 = 1). Arithmetic follows the product and chain rules.
class YJet {
 public:
  YJet() = default;
  YJet(TruncatedSeries value, TruncatedSeries d1, TruncatedSeries d2);

  /// A series that does not depend on y.
  static YJet constant(const TruncatedSeries& value);
  static YJet constant(const Rational& c, std::size_t order);
  /// c * x^xpow * y^ypow at y = y0.
  static YJet monomial(const Rational& c, std::size_t xpow, unsigned ypow, std::size_t order,
                       const Rational& y0 = 1);
  /// The variable y itself at y = y0.
  static YJet variable_y(std::size_t order, const Rational& y0 = 1);

  std::size_t order() const { return value_.order(); }
  const TruncatedSeries& value() const { return value_; }
  const TruncatedSeries& d1() const { return d1_; }
  const TruncatedSeries& d2() const { return d2_; }

  YJet& operator+=(const YJet& o);
  YJet& operator-=(const YJet& o);
  YJet& operator*=(const Rational& s);

  friend YJet operator+(YJet a, const YJet& b) { return a += b; }
  friend YJet operator-(YJet a, const YJet& b) { return a -= b; }
  friend YJet operator*(YJet a, const Rational& s) { return a *= s; }
  friend YJet operator*(const YJet& a, const YJet& b);
  friend YJet operator/(const YJet& a, const YJet& b);
  friend bool operator==(const YJet& a, const YJet& b) {
    return a.value_ == b.value_ && a.d1_ == b.d1_ && a.d2_ == b.d2_;
  }

 private:
  TruncatedSeries value_, d1_, d2_;
};

enum class JetOp { Add, Sub, Mul, Div };
YJet jet_arith(const YJet& a, const YJet& b, JetOp op);

YJet jet_sqrt(const YJet& f);
YJet jet_pow(const YJet& f, unsigned e);
/// p(g) for a polynomial p in one variable.
YJet jet_compose(const Polynomial& p, const YJet& g);
/// f(g) for a series f; g's value must have zero constant term.
YJet jet_compose(const TruncatedSeries& f, const YJet& g);
YJet divide_by_x_power(const YJet& f, std::size_t k);
YJet truncate(const YJet& f, std::size_t order);

}  // namespace toporna
