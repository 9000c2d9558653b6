#pragma once

// Generating functions of restricted topological RNA structures as truncated
// series in x carrying a second-order jet in y.

#include <vector>

#include "toporna/bipoly.hpp"
#include "toporna/diagram.hpp"
#include "toporna/recursions.hpp"
#include "toporna/series.hpp"

namespace toporna {

struct GFParams {
  int lambda = 1;  // minimum arc length
  int r = 1;       // minimum stack length
  int g = 0;
  std::size_t order = 30;  // coefficients x^0 .. x^{order-1}
  Rational y0 = 1;         // base point of the y-jets
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ABPair {
  BiPoly A;
  BiPoly B;
};

ABPair ab_polys(int lambda, int r);

/// A bivariate polynomial as a y-jet at y0.
YJet lift(const BiPoly& p, std::size_t order, const Rational& y0 = 1);

/// Secondary structures with y marking arcs. Throws if the quadratic
/// functional equation is not satisfied to the full order.
YJet d0_series(const GFParams& p);
/// (x^2 y)^r D^2 - B D + A for the given jet; zero for the true D0.
YJet d0_residual(const GFParams& p, const YJet& d0);

/// Genus-g structures (g >= 1) inflated from shapes.
YJet dg_series(const GFParams& p);
/// The same series through C_g and the A/B substitution.
YJet dg_via_cg(const GFParams& p);
/// d0_series for g = 0, dg_series otherwise.
YJet structures_series(const GFParams& p);

/// Secondary structures with y marking loops of one kind.
YJet loop_marked_d0(LoopKind kind, int lambda, int r, std::size_t order, const Rational& y0 = 1);
/// Genus-g structures with y marking loops of one kind, by inflating shapes
/// with marked induced stacks. Multi-loops closed by a shape arc around two or
/// more shape arcs are not marked here; see loop_marked_dg_exact.
YJet loop_marked_dg(LoopKind kind, const GFParams& p);
/// As loop_marked_dg, but multi-loops also carry the shape-level marker, so
/// the coefficients equal a literal loop census.
YJet loop_marked_dg_exact(LoopKind kind, const GFParams& p);
/// Sum over genus-g shapes with at most max_arcs arcs of x^arcs y^t, t the
/// number of multi-loops closed at shape level. Genus 2 is tabulated.
BiPoly shape_multi_poly(int g, int max_arcs);

/// Genus-g structures with y marking pseudoknots of type H, K, L or M.
YJet pk_marked_dg(PkKind kind, const GFParams& p, const IrreducibleSource& source = {});

/// P(arcs = l) for l = 0..floor(n/2), exactly, from the bivariate coefficients.
std::vector<Rational> arc_distribution(const GFParams& p, int n);
/// d(n, l) for l = 0..floor(n/2).
std::vector<Integer> arc_counts(const GFParams& p, int n);

struct Moments {
  Rational mean;
  Rational variance;
};

/// Mean and variance of the y-marked statistic at length n from a y-jet at y = 1.
Moments jet_moments(const YJet& jet, int n);
Moments moments(const GFParams& p, int n);

/// Throws ParameterError unless lambda, r >= 1 and, for g >= 1, lambda <= r + 1.
void check_params(const GFParams& p);

}  // namespace toporna
