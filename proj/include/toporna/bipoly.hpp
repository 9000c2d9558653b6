#pragma once

// Bivariate polynomials in (x, y) with integer coefficients, stored densely as
// one x-polynomial per power of y.

#include <string>
#include <utility>
#include <vector>

#include "toporna/series.hpp"

namespace toporna {

class BiPoly {
 public:
  BiPoly() = default;
  /// Lifts a univariate polynomial in x; its coefficients must be integers.
  static BiPoly from_x(const Polynomial& p);
  static BiPoly monomial(const Integer& c, std::size_t xpow, std::size_t ypow);
  static BiPoly constant(const Integer& c) { return monomial(c, 0, 0); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int x_degree() const;
  int y_degree() const { return static_cast<int>(c_.size()) - 1; }
  Integer coeff(std::size_t xpow, std::size_t ypow) const;

  /// Coefficient of y^b as a polynomial in x.
  Polynomial y_slice(std::size_t b) const;
  Polynomial at_y_one() const;
  BiPoly y_derivative() const;

  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  BiPoly& operator*=(const Integer& s);

  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Integer& s) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  /// Sorted (x exponent, y exponent, coefficient) triples of the nonzero terms.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Integer>> terms() const;
  std::string to_string() const;

 private:
  void normalize();
  std::vector<std::vector<Integer>> c_;  // c_[ypow][xpow]
};

BiPoly pow(const BiPoly& p, unsigned e);

}  // namespace toporna
