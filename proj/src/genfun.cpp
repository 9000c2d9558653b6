#include "toporna/genfun.hpp"

#include <array>

#include "toporna/enumeration.hpp"

namespace toporna {

namespace {

Rational rpow(const Rational& base, long e) {
  Rational out = 1;
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

YJet x_power(std::size_t k, std::size_t order) {
  return YJet::constant(TruncatedSeries::monomial(1, k, order));
}

YJet one(std::size_t order) { return YJet::constant(1, order); }

// 1 / (1 - x)^e as a y-free jet.
YJet geometric(std::size_t order, unsigned e = 1) {
  TruncatedSeries s = TruncatedSeries::constant(1, order) / TruncatedSeries({1, -1}, order);
  return YJet::constant(ts_pow(s, e));
}

// y^{-r} at y0, constant in x.
YJet inverse_y_power(int r, std::size_t order, const Rational& y0) {
  const Rational v = 1 / rpow(y0, r);
  const Rational d1 = -r * v / y0;
  const Rational d2 = Rational(r) * (r + 1) * v / (y0 * y0);
  return YJet(TruncatedSeries::constant(v, order), TruncatedSeries::constant(d1, order),
              TruncatedSeries::constant(d2, order));
}

// Sum_b y^b p_b(h) as a jet at y0, for a y-free series h.
YJet compose_bipoly(const BiPoly& p, const TruncatedSeries& h, const Rational& y0) {
  const std::size_t order = h.order();
  TruncatedSeries v(order), d1(order), d2(order);
  for (int b = 0; b <= p.y_degree(); ++b) {
    const Polynomial slice = p.y_slice(static_cast<std::size_t>(b));
    if (slice.is_zero()) continue;
    const TruncatedSeries s = ts_compose(slice, h);
    v += s * rpow(y0, b);
    if (b >= 1) d1 += s * (Rational(b) * rpow(y0, b - 1));
    if (b >= 2) d2 += s * (Rational(b) * (b - 1) * rpow(y0, b - 2));
  }
  return YJet(std::move(v), std::move(d1), std::move(d2));
}

// (x^2 y)^r as a jet.
YJet arc_power(int r, std::size_t order, const Rational& y0) {
  return YJet::monomial(1, static_cast<std::size_t>(2 * r), static_cast<unsigned>(r), order, y0);
}

// Substitution argument of the shape inflation:
//   X z^2 / (1 - x^2 y - X (z^2 - 1)),  X = (x^2 y)^r.
YJet inflation_argument(const YJet& z, int r, std::size_t order, const Rational& y0) {
  const YJet xr = arc_power(r, order, y0);
  const YJet z2 = z * z;
  const YJet den = one(order) - YJet::monomial(1, 2, 1, order, y0) - xr * (z2 - one(order));
  return xr * z2 / den;
}

}  // namespace

void check_params(const GFParams& p) {
  if (p.lambda < 1 || p.r < 1) throw ParameterError("lambda and r must be at least 1");
  if (p.g < 0) throw ParameterError("genus must be non-negative");
  if (p.g >= 1 && p.lambda > p.r + 1) {
    throw ParameterError("genus >= 1 requires lambda <= r + 1 (got lambda=" +
                         std::to_string(p.lambda) + ", r=" + std::to_string(p.r) + ")");
  }
  if (p.order == 0) throw ParameterError("order must be positive");
}

ABPair ab_polys(int lambda, int r) {
  if (lambda < 1 || r < 1) throw ParameterError("lambda and r must be at least 1");
  const BiPoly xr = BiPoly::monomial(1, static_cast<std::size_t>(2 * r), static_cast<std::size_t>(r));
  ABPair ab;
  ab.A = BiPoly::constant(1) - BiPoly::monomial(1, 2, 1) + xr;
  BiPoly tail;
  for (int i = 0; i <= lambda - 2; ++i) tail += BiPoly::monomial(1, static_cast<std::size_t>(i), 0);
  ab.B = (BiPoly::constant(1) - BiPoly::monomial(1, 1, 0)) * ab.A + xr * tail;
  return ab;
}

YJet lift(const BiPoly& p, std::size_t order, const Rational& y0) {
  return compose_bipoly(p, TruncatedSeries::monomial(1, 1, order), y0);
}

YJet d0_residual(const GFParams& p, const YJet& d0) {
  const std::size_t n = d0.order();
  const ABPair ab = ab_polys(p.lambda, p.r);
  return arc_power(p.r, n, p.y0) * d0 * d0 - lift(ab.B, n, p.y0) * d0 + lift(ab.A, n, p.y0);
}

YJet d0_series(const GFParams& p) {
  if (p.lambda < 1 || p.r < 1) throw ParameterError("lambda and r must be at least 1");
  const std::size_t shift = static_cast<std::size_t>(2 * p.r);
  const std::size_t work = p.order + shift;
  const ABPair ab = ab_polys(p.lambda, p.r);
  const YJet a = lift(ab.A, work, p.y0);
  const YJet b = lift(ab.B, work, p.y0);
  const YJet disc = b * b - arc_power(p.r, work, p.y0) * a * Rational(4);
  // The numerator vanishes to order 2r; divide_by_x_power checks that.
  const YJet num = divide_by_x_power(b - jet_sqrt(disc), shift);
  YJet d0 = num * inverse_y_power(p.r, p.order, p.y0) * Rational(1, 2);
  const YJet res = d0_residual(p, d0);
  if (!res.value().is_zero() || !res.d1().is_zero() || !res.d2().is_zero()) {
    throw std::logic_error("D0 does not satisfy its functional equation");
  }
  return d0;
}

YJet dg_series(const GFParams& p) {
  check_params(p);
  if (p.g < 1) throw ParameterError("dg_series needs genus >= 1");
  const YJet d0 = d0_series(p);
  const YJet h = inflation_argument(d0, p.r, p.order, p.y0);
  return d0 * jet_compose(shape_poly(p.g), h);
}

YJet dg_via_cg(const GFParams& p) {
  check_params(p);
  if (p.g < 1) throw ParameterError("dg_via_cg needs genus >= 1");
  const std::size_t n = p.order;
  const ABPair ab = ab_polys(p.lambda, p.r);
  const YJet a = lift(ab.A, n, p.y0);
  const YJet b = lift(ab.B, n, p.y0);
  const YJet arg = arc_power(p.r, n, p.y0) * a / (b * b);
  const TruncatedSeries cg = cg_by_closed_form(p.g, n + 2);
  return a / b * jet_compose(cg, arg);
}

YJet structures_series(const GFParams& p) { return p.g == 0 ? d0_series(p) : dg_series(p); }

YJet loop_marked_d0(LoopKind kind, int lambda, int r, std::size_t order, const Rational& y0) {
  if (lambda < 1 || r < 1) throw ParameterError("lambda and r must be at least 1");
  // Genus-0 grammar: D = 1/((1-x) - T), closed components T = K * Loop with
  // K = y1 x^{2r}/(1-x^2) and Loop = y3 hairpin + (2 y4 v + y5 v^2) T + y6 multi.
  // Eliminating T leaves c y6 D^2 - beta D + alpha = 0.
  const std::size_t shift = static_cast<std::size_t>(2 * r);
  const std::size_t work = order + shift;
  const YJet y = YJet::variable_y(work, y0);
  const YJet unit = one(work);
  const auto marker = [&](LoopKind k) { return kind == k ? y : unit; };
  const YJet u = geometric(work);
  const YJet v = x_power(1, work) * u;
  const YJet hp = x_power(static_cast<std::size_t>(lambda - 1), work) * u;
  // c = x^{2r} cc
  const YJet cc = marker(LoopKind::Stack) /
                  YJet::constant(TruncatedSeries({1, 0, -1}, work));
  const YJet c = x_power(shift, work) * cc;
  const YJet y3 = marker(LoopKind::Hairpin), y4 = marker(LoopKind::Bulge),
             y5 = marker(LoopKind::Interior), y6 = marker(LoopKind::Multi);
  const YJet alpha = unit - c * (y4 * v * Rational(2) + y5 * v * v - y6 * u * u);
  const YJet one_minus_x = YJet::constant(TruncatedSeries({1, -1}, work));
  const YJet beta = one_minus_x * alpha - c * (y3 * hp - y6 * u);
  const YJet disc = beta * beta - c * y6 * alpha * Rational(4);
  const YJet num = divide_by_x_power(beta - jet_sqrt(disc), shift);
  const YJet den = truncate(cc * y6, order) * Rational(2);
  return num / den;
}

namespace {

// Substitution argument for one shape arc when y marks loops of one kind:
// an induced stack whose consecutive stacks are separated by z-gaps.
YJet marked_arc_argument(LoopKind kind, const GFParams& p, const YJet& z) {
  const std::size_t n = p.order;
  const YJet y = YJet::variable_y(n, p.y0);
  const YJet unit = one(n);
  const YJet x2 = x_power(2, n);
  const YJet x2r = x_power(static_cast<std::size_t>(2 * p.r), n);
  const YJet z2m1 = z * z - unit;
  const YJet v = x_power(1, n) * geometric(n);
  YJet inner;  // the bracket multiplying x^{2r} in the denominator
  YJet head = x2r;
  switch (kind) {
    case LoopKind::Stack:
      head = x2r * y;
      inner = y * z2m1;
      break;
    case LoopKind::Hairpin:
      inner = z2m1;
      break;
    case LoopKind::Bulge:
      inner = z2m1 - v * Rational(2) * (unit - y);
      break;
    case LoopKind::Interior:
      inner = z2m1 - v * v * (unit - y);
      break;
    case LoopKind::Multi: {
      // x(2-x)/(1-x)^2
      const YJet w = YJet::constant(TruncatedSeries({0, 2, -1}, n)) * geometric(n, 2);
      inner = y * z2m1 + w * (unit - y);
      break;
    }
  }
  return head * z * z / (unit - x2 - x2r * inner);
}

// Marked shape polynomial for shape-level multi-loops at genus 2, tabulated
// from the full shape inventory (k = 4..11 arcs); regenerate with
// shape_multi_loop_poly(2, 11).
BiPoly genus_two_multi_shapes() {
  static const std::vector<std::array<long, 3>> rows = {
      // {arcs, loops, shapes}
      {4, 0, 21}, {5, 0, 196}, {5, 1, 14}, {6, 0, 633},
      {6, 1, 206}, {6, 2, 1}, {7, 0, 837}, {7, 1, 892},
      {7, 2, 56}, {8, 0, 387}, {8, 1, 1416}, {8, 2, 400},
      {8, 3, 2}, {9, 1, 739}, {9, 2, 801}, {9, 3, 56},
      {10, 2, 478}, {10, 3, 152}, {11, 3, 105},
  };
  BiPoly out;
  for (const auto& [k, t, c] : rows)
    out += BiPoly::monomial(c, static_cast<std::size_t>(k), static_cast<std::size_t>(t));
  return out;
}

}  // namespace

YJet loop_marked_dg(LoopKind kind, const GFParams& p) {
  check_params(p);
  if (p.g < 1) return loop_marked_d0(kind, p.lambda, p.r, p.order, p.y0);
  const YJet z = loop_marked_d0(kind, p.lambda, p.r, p.order, p.y0);
  return z * jet_compose(shape_poly(p.g), marked_arc_argument(kind, p, z));
}

BiPoly shape_multi_poly(int g, int max_arcs) {
  if (g < 1) return BiPoly();
  if (g == 2) {
    BiPoly out;
    for (const auto& [e, c] : genus_two_multi_shapes().terms())
      if (static_cast<int>(e.first) <= max_arcs) out += BiPoly::monomial(c, e.first, e.second);
    return out;
  }
  return shape_multi_loop_poly(g, max_arcs);
}

YJet loop_marked_dg_exact(LoopKind kind, const GFParams& p) {
  check_params(p);
  if (p.g < 1 || kind != LoopKind::Multi) return loop_marked_dg(kind, p);
  const std::size_t n = p.order;
  const YJet z = loop_marked_d0(kind, p.lambda, p.r, n, p.y0);
  const YJet h = marked_arc_argument(kind, p, z);
  // a shape with k arcs starts at x^{2rk}
  const int max_arcs = static_cast<int>((n - 1) / static_cast<std::size_t>(2 * p.r));
  const BiPoly shapes = shape_multi_poly(p.g, max_arcs);
  YJet sum = YJet::constant(TruncatedSeries(n));
  for (int t = 0; t <= shapes.y_degree(); ++t) {
    const Polynomial slice = shapes.y_slice(static_cast<std::size_t>(t));
    if (slice.is_zero()) continue;
    sum += YJet::monomial(1, 0, static_cast<unsigned>(t), n, p.y0) * jet_compose(slice, h);
  }
  return z * sum;
}

YJet pk_marked_dg(PkKind kind, const GFParams& p, const IrreducibleSource& source) {
  check_params(p);
  if (p.g < 1) throw ParameterError("pseudoknot marking needs genus >= 1");
  GFParams unmarked = p;
  unmarked.y0 = 1;
  const TruncatedSeries d0 = d0_series(unmarked).value();
  const std::size_t n = p.order;
  const TruncatedSeries xr = TruncatedSeries::monomial(1, static_cast<std::size_t>(2 * p.r), n);
  const TruncatedSeries d02 = d0 * d0;
  const TruncatedSeries den = TruncatedSeries::constant(1, n) - TruncatedSeries::monomial(1, 2, n) -
                              xr * (d02 - TruncatedSeries::constant(1, n));
  const TruncatedSeries h = xr * d02 / den;
  return YJet::constant(d0) * compose_bipoly(marked_shape_poly(p.g, kind, source), h, p.y0);
}

std::vector<Integer> arc_counts(const GFParams& p, int n) {
  check_params(p);
  if (n < 0) throw ParameterError("length must be non-negative");
  // d(n, y) is a polynomial of degree <= n/2 in y; recover it from its values
  // at y = 1, 2, ..., n/2 + 1 by Newton interpolation.
  const int deg = n / 2;
  GFParams q = p;
  q.order = static_cast<std::size_t>(n) + 1;
  std::vector<Rational> nodes, vals;
  for (int k = 1; k <= deg + 1; ++k) {
    q.y0 = k;
    nodes.emplace_back(k);
    vals.push_back(structures_series(q).value()[static_cast<std::size_t>(n)]);
  }
  // divided differences in place
  std::vector<Rational> coef = vals;
  for (int j = 1; j <= deg; ++j)
    for (int i = deg; i >= j; --i)
      coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j]);
  // expand the Newton form into monomial coefficients
  std::vector<Rational> poly(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = deg; i >= 0; --i) {
    // poly = poly * (y - nodes[i]) + coef[i]
    std::vector<Rational> next(poly.size(), 0);
    for (std::size_t e = 0; e + 1 < poly.size(); ++e) {
      next[e + 1] += poly[e];
      next[e] -= poly[e] * nodes[static_cast<std::size_t>(i)];
    }
    next[0] += coef[static_cast<std::size_t>(i)];
    poly = std::move(next);
  }
  std::vector<Integer> out;
  for (const auto& c : poly) {
    if (c.get_den() != 1) throw std::logic_error("arc counts are not integral");
    out.push_back(c.get_num());
  }
  return out;
}

std::vector<Rational> arc_distribution(const GFParams& p, int n) {
  const auto counts = arc_counts(p, n);
  Integer total = 0;
  for (const auto& c : counts) total += c;
  if (total == 0) {
    throw ParameterError("no structures of length " + std::to_string(n) + " for these parameters");
  }
  std::vector<Rational> out;
  for (const auto& c : counts) {
    Rational q(c, total);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

Moments jet_moments(const YJet& jet, int n) {
  const auto k = static_cast<std::size_t>(n);
  const Rational& v = jet.value()[k];
  if (sgn(v) == 0) throw ParameterError("no structures of length " + std::to_string(n));
  Moments m;
  m.mean = jet.d1()[k] / v;
  m.variance = jet.d2()[k] / v + m.mean - m.mean * m.mean;
  return m;
}

Moments moments(const GFParams& p, int n) {
  GFParams q = p;
  q.y0 = 1;
  q.order = std::max<std::size_t>(q.order, static_cast<std::size_t>(n) + 1);
  return jet_moments(structures_series(q), n);
}

}  // namespace toporna
