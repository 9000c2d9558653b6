// Runs the eight acceptance criteria and prints one PASS/FAIL line for each.
// Supporting numbers go to stderr. Exit status is nonzero if any criterion fails.

#include <boost/math/distributions/chi_squared.hpp>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "toporna/asymptotics.hpp"
#include "toporna/genfun.hpp"
#include "toporna/recursions.hpp"
#include "toporna/sampler.hpp"

using namespace toporna;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

// Records the first few failures so the summary stays short.
class Checker {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) std::cerr << "    mismatch: " << what << "\n";
  }
  bool ok() const { return failures_ == 0; }
  long checks() const { return checks_; }
  long failures() const { return failures_; }

 private:
  long checks_ = 0;
  long failures_ = 0;
};

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long z : c) v.emplace_back(z);
  return Polynomial(std::move(v));
}

GFParams params(int lambda, int r, int g, std::size_t order) {
  GFParams p;
  p.lambda = lambda;
  p.r = r;
  p.g = g;
  p.order = order;
  return p;
}

double D(const Real& x) { return static_cast<double>(x); }

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

const std::vector<std::pair<int, int>> kOracleParams = {{1, 1}, {2, 1}, {2, 2}};

Outcome ac1() {
  struct Cell {
    int lambda, r;
    double mu;
  };
  const std::vector<Cell> table = {
      {1, 1, 0.3333}, {1, 2, 0.3484}, {1, 3, 0.3582}, {1, 4, 0.3651}, {1, 5, 0.3704}, {1, 6, 0.3746},
      {2, 1, 0.2764}, {2, 2, 0.3172}, {2, 3, 0.3364}, {2, 4, 0.3482}, {2, 5, 0.3565}, {2, 6, 0.3627},
      {3, 2, 0.2983}, {3, 3, 0.3215}, {3, 4, 0.3358}, {3, 5, 0.3459}, {3, 6, 0.3534},
      {4, 3, 0.3113}, {4, 4, 0.3268}, {4, 5, 0.3378}, {4, 6, 0.3460},
      {5, 4, 0.3203}, {5, 5, 0.3316}, {5, 6, 0.3403},
      {6, 5, 0.3271}, {6, 6, 0.3359},
  };
  Checker c;
  double worst = 0;
  for (const auto& cell : table) {
    const double mu = D(clt_params(cell.lambda, cell.r).mu);
    const double diff = std::abs(mu - cell.mu);
    worst = std::max(worst, diff);
    c.require(diff <= 5e-5, "(" + std::to_string(cell.lambda) + "," + std::to_string(cell.r) + ") mu=" + fmt(mu, 8));
  }
  return {c.ok(), std::to_string(table.size()) + " populated cells, max |diff| " + fmt(worst, 3)};
}

Outcome ac2() {
  Checker c;
  c.require(kappa(1)[2] == 1, "kappa_1(2)");
  c.require(kappa(2)[4] == 21, "kappa_2(4)");
  c.require(shape_poly(1) == P({0, 0, 1}) * pow(P({1, 1}), 3), "S_1");
  const BiPoly y = BiPoly::monomial(1, 0, 1);
  const BiPoly sh1 = BiPoly::from_x(P({0, 0, 0, 1}) * P({1, 1}) * P({2, 1})) + BiPoly::from_x(P({0, 0, 1, 1})) * y;
  c.require(marked_shape_poly(1, PkKind::H) == sh1, "S^H_1");
  const BiPoly inner = BiPoly::from_x(P({17, 143, 447, 637, 420, 105})) + BiPoly::from_x(P({0, 20, 36, 14})) * y +
                       BiPoly::from_x(P({4, 5})) * y * y;
  c.require(marked_shape_poly(2, PkKind::H) == BiPoly::from_x(P({0, 0, 0, 0, 1}) * pow(P({1, 1}), 2)) * inner,
            "S^H_2");
  c.require(irreducible_poly(1) == P({0, 0, 1, 2, 1}), "I_1");
  c.require(irreducible_poly(2) == P({0, 0, 0, 0, 17, 160, 566, 1004, 961, 476, 96}), "I_2");
  return {c.ok(), std::to_string(c.checks()) + " exact pins"};
}

Outcome ac3() {
  constexpr int kMaxN = 14;
  constexpr std::size_t order = kMaxN + 1;
  Checker c;
  long table3_multi_gaps = 0;
  for (auto [l, r] : kOracleParams) {
    std::vector<std::map<int, Census>> census;
    for (int n = 0; n <= kMaxN; ++n) census.push_back(census_by_genus(n, l, r));
    auto at = [&](int g, int n) {
      auto it = census[n].find(g);
      return it == census[n].end() ? Census{} : it->second;
    };
    const std::string tag = "(" + std::to_string(l) + "," + std::to_string(r) + ")";
    for (int g = 0; g <= 2; ++g) {
      const auto plain = structures_series(params(l, r, g, order));
      std::vector<YJet> loops;
      for (auto k : kLoopKinds) loops.push_back(loop_marked_dg_exact(k, params(l, r, g, order)));
      const YJet table3_multi = loop_marked_dg(LoopKind::Multi, params(l, r, g, order));
      std::vector<YJet> pks;
      if (g >= 1)
        for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) pks.push_back(pk_marked_dg(k, params(l, r, g, order)));
      for (int n = 0; n <= kMaxN; ++n) {
        const Census cs = at(g, n);
        const auto i = static_cast<std::size_t>(n);
        const std::string where = tag + " g=" + std::to_string(g) + " n=" + std::to_string(n);
        c.require(plain.value()[i] == Rational(cs.structures), "structures " + where);
        c.require(plain.d1()[i] == Rational(cs.arcs.first), "arcs " + where);
        for (std::size_t k = 0; k < kLoopKinds.size(); ++k) {
          c.require(loops[k].value()[i] == Rational(cs.structures), "loop value " + where);
          c.require(loops[k].d1()[i] == Rational(cs.loops[k].first), to_string(kLoopKinds[k]) + " " + where);
        }
        if (table3_multi.d1()[i] != Rational(cs.loop(LoopKind::Multi).first)) ++table3_multi_gaps;
        for (std::size_t k = 0; k < pks.size(); ++k) {
          c.require(pks[k].value()[i] == Rational(cs.structures), "pk value " + where);
          c.require(pks[k].d1()[i] == Rational(cs.pk[k].first), "pk " + std::to_string(k) + " " + where);
        }
      }
    }
  }
  std::cerr << "    multi-loop series as printed in Table 3 differs from the census at " << table3_multi_gaps
            << " (params, g, n) points; the shape-level marker closes the gap\n";
  return {c.ok(), std::to_string(c.checks()) + " exact coefficient checks, n<=14, g<=2; " +
                      std::to_string(table3_multi_gaps) + " Table-3 multi gaps reported"};
}

Outcome ac4() {
  constexpr std::size_t order = 41;
  Checker c;
  for (int g = 1; g <= 3; ++g) {
    const auto a = cg_by_recursion(g, order);
    c.require(a == cg_by_shapes(g, order), "C_g recursion vs shapes g=" + std::to_string(g));
    c.require(a == cg_by_closed_form(g, order), "C_g recursion vs closed form g=" + std::to_string(g));
  }
  for (auto [l, r] : kOracleParams) {
    const auto d0p = params(l, r, 0, order);
    const auto res = d0_residual(d0p, d0_series(d0p));
    c.require(res.value().is_zero() && res.d1().is_zero() && res.d2().is_zero(), "D0 residual");
    for (int g = 0; g <= 2; ++g) {
      const auto p = params(l, r, g, order);
      const auto plain = structures_series(p).value();
      if (g >= 1) {
        const auto a = dg_series(p), b = dg_via_cg(p);
        c.require(a.value() == b.value() && a.d1() == b.d1() && a.d2() == b.d2(), "D_g routes g=" + std::to_string(g));
        for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M})
          c.require(pk_marked_dg(k, p).value() == plain, "pk marked at y=1");
      }
      for (auto k : kLoopKinds) {
        c.require(loop_marked_dg(k, p).value() == plain, "loop marked at y=1");
        c.require(loop_marked_dg_exact(k, p).value() == plain, "exact loop marked at y=1");
      }
    }
  }
  return {c.ok(), std::to_string(c.checks()) + " identities to order 40"};
}

Outcome ac5() {
  Checker c;
  std::multiset<std::size_t> genus_one;
  std::map<int, long> genus_two;
  for (int k = 1; k <= 7; ++k) {
    for (const auto& s : enumerate_shadows(k)) {
      if (!s.irreducible) continue;
      if (s.genus == 1) genus_one.insert(s.diagram.arc_count());
      if (s.genus == 2) ++genus_two[k];
    }
  }
  c.require(genus_one == std::multiset<std::size_t>{2, 3, 3, 4}, "genus-1 irreducible shadows");
  const auto i2 = irreducible_poly(2);
  std::string counts;
  for (int k = 4; k <= 7; ++k) {
    c.require(Rational(genus_two[k]) == i2[static_cast<std::size_t>(k)], "genus-2 shadows with " + std::to_string(k) + " arcs");
    counts += (counts.empty() ? "" : ",") + std::to_string(genus_two[k]);
  }
  return {c.ok(), "genus-1 irreducible: " + std::to_string(genus_one.size()) + " shadows; genus-2 at 4..7 arcs: " + counts};
}

Outcome ac6() {
  const auto jet = pk_marked_dg(PkKind::H, params(1, 1, 1, 401));
  std::vector<double> scaled, gaps;
  for (std::size_t n : {100u, 200u, 400u}) {
    const Rational mean = jet.d1()[n] / jet.value()[n];
    const double v = D(to_real(mean)) * static_cast<double>(n);
    scaled.push_back(v);
    gaps.push_back(std::abs(v - 18) / 18);
    std::cerr << "    n=" << n << "  n*E[X^H] = " << fmt(v, 8) << "  relative gap " << fmt(gaps.back(), 4) << "\n";
  }
  const bool within = gaps.back() <= 0.05;
  const bool decreasing = gaps[0] > gaps[1] && gaps[1] > gaps[2];
  SqrtForm sum{0, 0, 0};
  for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) sum = sum + pk_leading_term(k).numerator;
  const bool identity = sum == pk_leading_term(PkKind::H).denominator;
  std::cerr << "    within 5% at n=400: " << (within ? "yes" : "no") << "; gap decreasing: " << (decreasing ? "yes" : "no")
            << "; P(H)+P(K)+P(L)+P(M)=1 exactly: " << (identity ? "yes" : "no") << "\n";
  return {within && decreasing && identity, "400*E[X^H]=" + fmt(scaled.back(), 6) + " vs 18 (gap " +
                                                fmt(100 * gaps.back(), 3) + "%, limit 5%); gaps " + fmt(gaps[0], 3) +
                                                ">" + fmt(gaps[1], 3) + ">" + fmt(gaps[2], 3) +
                                                "; leading-term identity " + (identity ? "exact" : "broken")};
}

Outcome ac7() {
  constexpr std::size_t order = 401;
  const Real rho11 = rho(1, 1, Real(1));
  auto fit = [&](int g) {
    const auto series = structures_series(params(1, 1, g, order)).value();
    std::vector<Rational> window;
    for (std::size_t n = 200; n < order; ++n) window.push_back(series[n]);
    return exponent_fit(window, 200, rho11);
  };
  const double e0 = fit(0), e1 = fit(1), e2 = fit(2);
  const bool ok = std::abs(e0 + 1.5) <= 0.1 && std::abs(e1 - 1.5) <= 0.1 && std::abs(e2 - e1 - 3.0) <= 0.15;
  return {ok, "d0 " + fmt(e0, 5) + ", d1 " + fmt(e1, 5) + ", d2-d1 gap " + fmt(e2 - e1, 5)};
}

Outcome ac8() {
  constexpr long draws = 100000;
  Checker c;
  EnumFilter f;
  f.genus_set = std::set<int>{1};
  const auto family = list_diagrams(12, f);
  const SampleSpec spec{12, 1, 1, 1, draws, 20240601};
  const auto sample = sample_grammar(spec);
  c.require(sample == sample_grammar(spec), "determinism under a fixed seed");
  std::map<Diagram, long> seen;
  for (const auto& d : sample) ++seen[d];
  std::size_t outside = 0;
  for (const auto& [d, hits] : seen) outside += !std::binary_search(family.begin(), family.end(), d);
  c.require(outside == 0, "draws outside the family");
  const double expected = static_cast<double>(draws) / static_cast<double>(family.size());
  double stat = 0;
  for (const auto& d : family) {
    auto it = seen.find(d);
    const double o = it == seen.end() ? 0.0 : static_cast<double>(it->second);
    stat += (o - expected) * (o - expected) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(family.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  c.require(p > 1e-3, "chi-square p=" + fmt(p));
  std::cerr << "    n=12 family " << family.size() << ", chi2 " << fmt(stat, 8) << " on " << family.size() - 1
            << " df, p=" << fmt(p, 4) << "\n";

  const auto exact = moments(params(1, 1, 1, 17), 16);
  const Census cs = empirical_stats(sample_grammar(SampleSpec{16, 1, 1, 1, draws, 777}));
  const double mean = static_cast<double>(cs.arcs.first) / draws;
  const double se = std::sqrt(exact.variance.get_d() / draws);
  const double z = (mean - exact.mean.get_d()) / se;
  c.require(std::abs(z) <= 4, "n=16 mean arc count z=" + fmt(z));
  std::cerr << "    n=16 mean arcs " << fmt(mean, 8) << " vs exact " << fmt(exact.mean.get_d(), 8) << " (z=" << fmt(z, 3)
            << ")\n";
  return {c.ok(), "chi-square p=" + fmt(p, 4) + " over " + std::to_string(family.size()) + " structures; n=16 mean z=" +
                      fmt(z, 3)};
}

}  // namespace

int main() {
  const std::vector<std::tuple<std::string, std::string, std::function<Outcome()>>> criteria = {
      {"AC1", "Table 1 means", ac1},          {"AC2", "exact polynomial pins", ac2},
      {"AC3", "oracle equivalence", ac3},     {"AC4", "cross-route identities", ac4},
      {"AC5", "shadow census", ac5},          {"AC6", "pseudoknot rates", ac6},
      {"AC7", "exponent fits", ac7},          {"AC8", "sampler correctness", ac8},
  };
  int failed = 0;
  for (const auto& [id, name, run] : criteria) {
    std::cerr << id << " " << name << "\n";
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !out.pass;
    std::cout << id << " " << (out.pass ? "PASS" : "FAIL") << "  " << name << ": " << out.summary << " [" << fmt(secs, 3)
              << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
