#pragma once

// Exact integer tables and polynomials: chord-diagram counts by genus, the
// kappa coefficients, shape polynomials, irreducible-shadow polynomials and
// their pseudoknot-marked refinements.

#include <map>
#include <utility>

#include "toporna/bipoly.hpp"
#include "toporna/diagram.hpp"
#include "toporna/series.hpp"

namespace toporna {

class CoefficientTable {
 public:
  /// Zero when the entry was never set.
  Integer at(int g, int n) const;
  void set(int g, int n, Integer value);
  const std::map<std::pair<int, int>, Integer>& entries() const { return entries_; }

 private:
  std::map<std::pair<int, int>, Integer> entries_;
};

/// c_g(n) for 0 <= g <= g_max, 0 <= n <= n_max via the two-term recursion.
CoefficientTable chord_counts(int g_max, int n_max);

/// kappa_g(n) as the coefficient of x^n; support [2g, 3g-1].
Polynomial kappa(int g);

/// Generating polynomial of genus-g shapes by arc count; support [2g, 6g-1].
Polynomial shape_poly(int g);

/// Where irreducible-shadow polynomials for g >= 3 come from. Genus 1 and 2
/// are built in. `derive_from_shapes` solves the shape recursion for I_g given
/// S_g and the lower I_j; `supplied` injects polynomials directly and wins over
/// everything else.
struct IrreducibleSource {
  bool derive_from_shapes = false;
  std::map<int, Polynomial> supplied;
};

class MissingPolynomialError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Polynomial irreducible_poly(int g, const IrreducibleSource& source = {});

/// I_g with y marking irreducible shadows of one genus-1 type. Only H, K, L, M
/// are valid kinds.
BiPoly marked_irreducible_poly(int g, PkKind kind, const IrreducibleSource& source = {});

/// Shape polynomial with y marking pseudoknots of the given type.
BiPoly marked_shape_poly(int g, PkKind kind, const IrreducibleSource& source = {});

/// S_g rebuilt from irreducible shadows by the unmarked shape recursion;
/// an independent route to shape_poly.
Polynomial shape_poly_from_irreducibles(int g, const IrreducibleSource& source = {});

/// C_g(x) to the given order by three independent routes.
TruncatedSeries cg_by_recursion(int g, std::size_t order);
TruncatedSeries cg_by_shapes(int g, std::size_t order);
TruncatedSeries cg_by_closed_form(int g, std::size_t order);

/// The Catalan generating function C_0(x) to the given order.
TruncatedSeries catalan_series(std::size_t order);

/// Polynomial division that must leave no remainder.
Polynomial divide_exact(const Polynomial& num, const Polynomial& den);

}  // namespace toporna
