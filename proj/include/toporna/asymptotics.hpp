#pragma once

// Dominant singularities, central-limit parameters of the arc count, the
// leading-term pseudoknot probabilities at genus one, and fits of the
// subexponential growth exponent.

#include <boost/multiprecision/mpfr.hpp>

#include "toporna/bipoly.hpp"
#include "toporna/diagram.hpp"
#include "toporna/series.hpp"

namespace toporna {

using Real = boost::multiprecision::mpfr_float;

class AsymptoticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sets the working precision for Real in significant decimal digits (default 50).
void set_working_digits(unsigned digits);
unsigned working_digits();

Real to_real(const Rational& q);

/// B^2 - 4 (x^2 y)^r A.
BiPoly discriminant(int lambda, int r);

/// Smallest root of the discriminant in (0, 1) at the given y.
Real rho(int lambda, int r, const Real& y);

struct CltParams {
  Real mu;
  Real sigma2;
};

/// Mean and variance rates of the arc count from theta(s) = rho(e^s), by
/// implicit differentiation of the discriminant.
CltParams clt_params(int lambda, int r);
/// The same quantities from central differences of rho at y = 1 +- h.
CltParams clt_params_finite_difference(int lambda, int r, const Real& h);

/// A value c0 + c1 sqrt(3 pi n) + c2 n with rational coefficients.
struct SqrtForm {
  Rational constant;
  Rational sqrt3pin;
  Rational linear;
  Real eval(long n) const;
  friend bool operator==(const SqrtForm&, const SqrtForm&) = default;
  SqrtForm operator+(const SqrtForm& o) const {
    return {constant + o.constant, sqrt3pin + o.sqrt3pin, linear + o.linear};
  }
};

/// Leading terms of P(X = 1) for the genus-1 pseudoknot types at lambda = r = 1,
/// as numerator / denominator with the O(1/n) corrections dropped.
struct LeadingRatio {
  SqrtForm numerator;
  SqrtForm denominator;
  Real eval(long n) const;
};

LeadingRatio pk_leading_term(PkKind kind);
Real pk_expectation_asymptotic(PkKind kind, long n);

/// Least-squares slope of log(a_n rho^n) against log n over the tail half of
/// the window. coeffs[i] is a_{first_n + i}.
double exponent_fit(const std::vector<Rational>& coeffs, long first_n, const Real& rho_value);

}  // namespace toporna
