#include "toporna/recursions.hpp"

#include <functional>

namespace toporna {

namespace {

// Series in t truncated after t^m whose coefficients are bivariate polynomials.
using TSeries = std::vector<BiPoly>;

TSeries t_mul(const TSeries& a, const TSeries& b) {
  TSeries out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

const BiPoly& x_poly() {
  static const BiPoly x = BiPoly::monomial(1, 1, 0);
  return x;
}

// [t^m] I(W(t), y) where W = x P^2 / (1 - x (P^2 - 1)) and P = sum_{k<=m} S_k t^k.
BiPoly substituted_coefficient(const BiPoly& irr, const std::vector<BiPoly>& shapes, std::size_t m) {
  TSeries p(m + 1);
  for (std::size_t k = 0; k <= m; ++k) p[k] = shapes[k];
  const TSeries p2 = t_mul(p, p);
  TSeries xe = p2;
  xe[0] -= BiPoly::constant(1);
  for (auto& c : xe) c = c * x_poly();
  // 1/(1 - xE) = sum_q (xE)^q; xE has no t^0 term, so q <= m suffices.
  TSeries geo(m + 1);
  geo[0] = BiPoly::constant(1);
  TSeries term = geo;
  for (std::size_t q = 1; q <= m; ++q) {
    term = t_mul(term, xe);
    for (std::size_t k = 0; k <= m; ++k) geo[k] += term[k];
  }
  TSeries w = t_mul(p2, geo);
  for (auto& c : w) c = c * x_poly();

  BiPoly out;
  const int xdeg = irr.x_degree();
  TSeries wpow(m + 1);
  wpow[0] = BiPoly::constant(1);
  for (int a = 0; a <= xdeg; ++a) {
    if (a > 0) wpow = t_mul(wpow, w);
    BiPoly coeff;
    for (int b = 0; b <= irr.y_degree(); ++b) {
      const Integer c = irr.coeff(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
      if (sgn(c) != 0) coeff += BiPoly::monomial(c, 0, static_cast<std::size_t>(b));
    }
    if (!coeff.is_zero()) out += coeff * wpow[m];
  }
  return out;
}

// Every term of the shape recursion for S_g except the (x+1) I_g(x, y) one.
BiPoly recursion_rest(int g, const std::vector<BiPoly>& shapes,
                      const std::function<BiPoly(int)>& irreducible) {
  BiPoly rest;
  for (int i = 1; i < g; ++i) rest += x_poly() * shapes[i] * shapes[g - i];
  BiPoly sub;
  for (int j = 1; j < g; ++j) {
    sub += substituted_coefficient(irreducible(j), shapes, static_cast<std::size_t>(g - j));
  }
  rest += (x_poly() + BiPoly::constant(1)) * sub;
  return rest;
}

std::vector<BiPoly> shapes_by_recursion(int g, const std::function<BiPoly(int)>& irreducible) {
  std::vector<BiPoly> shapes{BiPoly::constant(1)};
  for (int k = 1; k <= g; ++k) {
    BiPoly s = recursion_rest(k, shapes, irreducible);
    s += (x_poly() + BiPoly::constant(1)) * irreducible(k);
    shapes.push_back(std::move(s));
  }
  return shapes;
}

Polynomial poly_of(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long z : c) v.emplace_back(z);
  return Polynomial(std::move(v));
}

void require_genus(int g) {
  if (g < 1) throw std::invalid_argument("genus must be at least 1");
}

}  // namespace

Integer CoefficientTable::at(int g, int n) const {
  auto it = entries_.find({g, n});
  return it == entries_.end() ? Integer(0) : it->second;
}

void CoefficientTable::set(int g, int n, Integer value) { entries_[{g, n}] = std::move(value); }

CoefficientTable chord_counts(int g_max, int n_max) {
  CoefficientTable t;
  for (int g = 0; g <= g_max; ++g) {
    for (int n = 0; n <= n_max; ++n) {
      Integer value = 0;
      if (g == 0 && n == 0) {
        value = 1;
      } else if (2 * g <= n && n >= 1) {
        const long nn = n;
        Integer rhs = 2 * (2 * nn - 1) * t.at(g, n - 1);
        if (g >= 1 && n >= 2) rhs += Integer((nn - 1) * (2 * nn - 1) * (2 * nn - 3)) * t.at(g - 1, n - 2);
        if (rhs % (nn + 1) != 0) throw std::logic_error("chord count recursion left a remainder");
        value = rhs / (nn + 1);
      }
      t.set(g, n, value);
    }
  }
  return t;
}

Polynomial kappa(int g) {
  require_genus(g);
  // kappa_1(2) = 1; each genus step only looks at g - 1.
  std::map<int, Integer> prev{{2, 1}};
  for (int h = 2; h <= g; ++h) {
    std::map<int, Integer> cur;
    for (int n = 2 * h; n <= 3 * h - 1; ++n) {
      const long nn = n;
      auto get = [&](int k) {
        auto it = prev.find(k);
        return it == prev.end() ? Integer(0) : it->second;
      };
      Integer rhs = Integer((nn - 1) * (2 * nn - 1) * (2 * nn - 3)) * get(n - 2) +
                    Integer(2 * (2 * nn - 1) * (2 * nn - 3) * (2 * nn - 5)) * get(n - 3);
      if (rhs % (nn + 1) != 0) throw std::logic_error("kappa recursion left a remainder");
      cur[n] = rhs / (nn + 1);
    }
    prev = std::move(cur);
  }
  std::vector<Rational> c(static_cast<std::size_t>(3 * g), 0);
  for (const auto& [n, v] : prev) c[static_cast<std::size_t>(n)] = Rational(v);
  return Polynomial(std::move(c));
}

Polynomial shape_poly(int g) {
  const Polynomial k = kappa(g);
  const Polynomial one_plus_x{1, 1};
  Polynomial s;
  for (int n = 2 * g; n <= 3 * g - 1; ++n) {
    s += Polynomial::monomial(k[static_cast<std::size_t>(n)], static_cast<std::size_t>(n)) *
         pow(one_plus_x, static_cast<unsigned>(n + 1));
  }
  return s;
}

Polynomial divide_exact(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::invalid_argument("divide_exact: division by zero polynomial");
  Polynomial rem = num;
  const int dd = den.degree();
  const Rational lead = den.coeffs().back();
  std::vector<Rational> q(static_cast<std::size_t>(std::max(num.degree() - dd + 1, 0)));
  while (!rem.is_zero() && rem.degree() >= dd) {
    const int shift = rem.degree() - dd;
    const Rational c = rem.coeffs().back() / lead;
    q[static_cast<std::size_t>(shift)] = c;
    rem -= Polynomial::monomial(c, static_cast<std::size_t>(shift)) * den;
  }
  if (!rem.is_zero()) throw std::logic_error("divide_exact: nonzero remainder " + rem.to_string());
  return Polynomial(std::move(q));
}

Polynomial irreducible_poly(int g, const IrreducibleSource& source) {
  require_genus(g);
  if (auto it = source.supplied.find(g); it != source.supplied.end()) return it->second;
  if (g == 1) return pow(poly_of({0, 1}), 2) * pow(poly_of({1, 1}), 2);
  if (g == 2) return pow(poly_of({0, 1}), 4) * pow(poly_of({1, 1}), 4) * poly_of({17, 92, 96});
  if (!source.derive_from_shapes) {
    throw MissingPolynomialError("irreducible shadow polynomial for genus " + std::to_string(g) +
                                 " is not built in; supply it or enable derivation from shapes");
  }
  const auto irr = [&](int j) { return BiPoly::from_x(irreducible_poly(j, source)); };
  std::vector<BiPoly> shapes{BiPoly::constant(1)};
  for (int k = 1; k < g; ++k) shapes.push_back(BiPoly::from_x(shape_poly(k)));
  const Polynomial rest = recursion_rest(g, shapes, irr).at_y_one();
  return divide_exact(shape_poly(g) - rest, poly_of({1, 1}));
}

BiPoly marked_irreducible_poly(int g, PkKind kind, const IrreducibleSource& source) {
  require_genus(g);
  const auto term = [](long c, std::size_t xp, std::size_t yp) { return BiPoly::monomial(c, xp, yp); };
  if (g >= 2) {
    if (kind == PkKind::HigherGenus || kind == PkKind::SecondaryTrivial) {
      throw std::invalid_argument("marked polynomials exist only for H, K, L and M");
    }
    return BiPoly::from_x(irreducible_poly(g, source));
  }
  switch (kind) {
    case PkKind::H: return term(1, 2, 1) + term(2, 3, 0) + term(1, 4, 0);
    case PkKind::K:
    case PkKind::L: return term(1, 3, 1) + term(1, 2, 0) + term(1, 3, 0) + term(1, 4, 0);
    case PkKind::M: return term(1, 4, 1) + term(1, 2, 0) + term(2, 3, 0);
    default: throw std::invalid_argument("marked polynomials exist only for H, K, L and M");
  }
}

BiPoly marked_shape_poly(int g, PkKind kind, const IrreducibleSource& source) {
  require_genus(g);
  const auto irr = [&](int j) { return marked_irreducible_poly(j, kind, source); };
  return shapes_by_recursion(g, irr)[static_cast<std::size_t>(g)];
}

Polynomial shape_poly_from_irreducibles(int g, const IrreducibleSource& source) {
  require_genus(g);
  const auto irr = [&](int j) { return BiPoly::from_x(irreducible_poly(j, source)); };
  return shapes_by_recursion(g, irr)[static_cast<std::size_t>(g)].at_y_one();
}

TruncatedSeries catalan_series(std::size_t order) {
  const TruncatedSeries root = ts_sqrt(TruncatedSeries({1, -4}, order + 1));
  TruncatedSeries num = TruncatedSeries::constant(1, order + 1) - root;
  return divide_by_x_power(num * Rational(1, 2), 1);
}

TruncatedSeries cg_by_recursion(int g, std::size_t order) {
  require_genus(g);
  const auto table = chord_counts(g, static_cast<int>(order));
  TruncatedSeries s(order);
  for (std::size_t n = 0; n < order; ++n) s[n] = Rational(table.at(g, static_cast<int>(n)));
  return s;
}

TruncatedSeries cg_by_shapes(int g, std::size_t order) {
  require_genus(g);
  const TruncatedSeries c0 = catalan_series(order);
  const TruncatedSeries xc2 = TruncatedSeries::monomial(1, 1, order) * c0 * c0;
  const TruncatedSeries u = xc2 / (TruncatedSeries::constant(1, order) - xc2);
  return c0 * ts_compose(shape_poly(g), u);
}

TruncatedSeries cg_by_closed_form(int g, std::size_t order) {
  require_genus(g);
  const Polynomial k = kappa(g);
  TruncatedSeries s(order);
  for (int n = 2 * g; n <= 3 * g - 1; ++n) {
    const auto shift = static_cast<std::size_t>(n);
    if (shift >= order) break;
    const TruncatedSeries p = puiseux_expand(static_cast<unsigned>(n), order - shift);
    for (std::size_t i = 0; i + shift < order; ++i) s[i + shift] += k[shift] * p[i];
  }
  return s;
}

}  // namespace toporna
