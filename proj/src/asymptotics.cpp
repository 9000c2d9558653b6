#include "toporna/asymptotics.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <mpfr.h>

#include "toporna/genfun.hpp"

namespace toporna {

namespace {

unsigned g_digits = 50;

// Boost starts mpfr_float at 20 digits; apply ours before any Real is made.
const bool g_precision_set = (Real::default_precision(g_digits), true);

struct Partials {
  Real p, px, py, pxx, pxy, pyy;
};

Real ipow(const Real& b, std::size_t e) {
  Real out = 1;
  for (std::size_t i = 0; i < e; ++i) out *= b;
  return out;
}

Partials evaluate(const BiPoly& poly, const Real& x, const Real& y) {
  Partials out{0, 0, 0, 0, 0, 0};
  for (const auto& [exps, coef] : poly.terms()) {
    const auto [a, b] = exps;
    const Real c = to_real(Rational(coef));
    const Real xa = ipow(x, a), yb = ipow(y, b);
    out.p += c * xa * yb;
    if (a >= 1) out.px += c * a * ipow(x, a - 1) * yb;
    if (b >= 1) out.py += c * b * xa * ipow(y, b - 1);
    if (a >= 2) out.pxx += c * a * (a - 1) * ipow(x, a - 2) * yb;
    if (a >= 1 && b >= 1) out.pxy += c * a * b * ipow(x, a - 1) * ipow(y, b - 1);
    if (b >= 2) out.pyy += c * b * (b - 1) * xa * ipow(y, b - 2);
  }
  return out;
}

CltParams from_theta(const Real& t0, const Real& t1, const Real& t2) {
  const Real ratio = t1 / t0;
  return {-ratio, ratio * ratio - t2 / t0};
}

}  // namespace

void set_working_digits(unsigned digits) {
  g_digits = digits;
  Real::default_precision(digits);
}

unsigned working_digits() { return g_digits; }

Real to_real(const Rational& q) {
  Real::default_precision(g_digits);
  Real out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

BiPoly discriminant(int lambda, int r) {
  const ABPair ab = ab_polys(lambda, r);
  const BiPoly xr = BiPoly::monomial(1, static_cast<std::size_t>(2 * r), static_cast<std::size_t>(r));
  return ab.B * ab.B - xr * ab.A * Integer(4);
}

Real rho(int lambda, int r, const Real& y) {
  Real::default_precision(g_digits);
  const BiPoly disc = discriminant(lambda, r);
  // scan (0, 1) for the first sign change, then bisect and polish with Newton
  const int steps = 1000;
  Real lo = 0;
  Real flo = evaluate(disc, lo, y).p;
  for (int i = 1; i <= steps; ++i) {
    const Real hi = Real(i) / steps;
    const Real fhi = evaluate(disc, hi, y).p;
    if (fhi == 0) return hi;
    if ((flo > 0) != (fhi > 0)) {
      Real a = lo, b = hi;
      for (int it = 0; it < 60; ++it) {
        const Real m = (a + b) / 2;
        if ((evaluate(disc, m, y).p > 0) == (flo > 0)) a = m;
        else b = m;
      }
      Real x = (a + b) / 2;
      const Real tol = pow(Real(10), -static_cast<int>(g_digits));
      for (int it = 0; it < 100; ++it) {
        const Partials pt = evaluate(disc, x, y);
        if (pt.px == 0) break;
        const Real step = pt.p / pt.px;
        x -= step;
        if (abs(step) <= tol * abs(x)) break;
      }
      return x;
    }
    lo = hi;
    flo = fhi;
  }
  throw AsymptoticsError("no root of the discriminant in (0, 1) for lambda=" + std::to_string(lambda) +
                         ", r=" + std::to_string(r));
}

CltParams clt_params(int lambda, int r) {
  const Real y = 1;
  const Real x = rho(lambda, r, y);
  const Partials pt = evaluate(discriminant(lambda, r), x, y);
  if (pt.px == 0) throw AsymptoticsError("the discriminant is singular at rho(1)");
  // rho' = -P_y / P_x, rho'' from differentiating P(rho(y), y) = 0 twice
  const Real d1 = -pt.py / pt.px;
  const Real d2 = -(pt.pyy + 2 * pt.pxy * d1 + pt.pxx * d1 * d1) / pt.px;
  // theta(s) = rho(e^s): theta' = rho', theta'' = rho'' + rho' at s = 0
  return from_theta(x, d1, d2 + d1);
}

CltParams clt_params_finite_difference(int lambda, int r, const Real& h) {
  const Real t0 = rho(lambda, r, Real(1));
  const Real up = rho(lambda, r, exp(h));
  const Real down = rho(lambda, r, exp(-h));
  return from_theta(t0, (up - down) / (2 * h), (up - 2 * t0 + down) / (h * h));
}

Real SqrtForm::eval(long n) const {
  const Real pi = boost::math::constants::pi<Real>();
  return to_real(constant) + to_real(sqrt3pin) * sqrt(3 * pi * n) + to_real(linear) * n;
}

Real LeadingRatio::eval(long n) const { return numerator.eval(n) / denominator.eval(n); }

LeadingRatio pk_leading_term(PkKind kind) {
  const SqrtForm den{-51, 0, 16};
  switch (kind) {
    case PkKind::H: return {{288, 0, 0}, den};
    case PkKind::K:
    case PkKind::L: return {{-432, 24, 0}, den};
    case PkKind::M: return {{525, -48, 16}, den};
    default: break;
  }
  throw std::invalid_argument("leading terms exist only for H, K, L and M");
}

Real pk_expectation_asymptotic(PkKind kind, long n) {
  if (n < 4) throw std::invalid_argument("n must be at least 4");
  return pk_leading_term(kind).eval(n);
}

double exponent_fit(const std::vector<Rational>& coeffs, long first_n, const Real& rho_value) {
  if (coeffs.size() < 50) throw std::invalid_argument("exponent_fit needs at least 50 coefficients");
  const std::size_t start = coeffs.size() / 2;
  const Real log_rho = log(rho_value);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = start; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) <= 0) throw std::invalid_argument("exponent_fit needs positive coefficients");
    const long n = first_n + static_cast<long>(i);
    const double lx = std::log(static_cast<double>(n));
    const double ly = static_cast<double>(log(to_real(coeffs[i])) + n * log_rho);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double md = static_cast<double>(m);
  return (md * sxy - sx * sy) / (md * sxx - sx * sx);
}

}  // namespace toporna
