#include <gtest/gtest.h>

#include "toporna/enumeration.hpp"
#include "toporna/genfun.hpp"

namespace toporna {
namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long z : c) v.emplace_back(z);
  return Polynomial(std::move(v));
}

BiPoly term(long c, std::size_t xp, std::size_t yp) { return BiPoly::monomial(c, xp, yp); }

GFParams params(int lambda, int r, int g, std::size_t order, Rational y0 = 1) {
  GFParams p;
  p.lambda = lambda;
  p.r = r;
  p.g = g;
  p.order = order;
  p.y0 = y0;
  return p;
}

Rational Q(long v) { return Rational(v); }

void expect_jets_equal(const YJet& a, const YJet& b) {
  EXPECT_EQ(a.value(), b.value());
  EXPECT_EQ(a.d1(), b.d1());
  EXPECT_EQ(a.d2(), b.d2());
}

const std::vector<std::pair<int, int>> kOracleParams = {{1, 1}, {2, 1}, {2, 2}};
constexpr int kOracleN = 11;

// census_by_genus for every n <= kOracleN, computed once per (lambda, r)
const std::vector<std::map<int, Census>>& oracle(int lambda, int r) {
  static std::map<std::pair<int, int>, std::vector<std::map<int, Census>>> cache;
  auto& slot = cache[{lambda, r}];
  if (slot.empty())
    for (int n = 0; n <= kOracleN; ++n) slot.push_back(census_by_genus(n, lambda, r));
  return slot;
}

Census oracle_at(int lambda, int r, int g, int n) {
  const auto& by_genus = oracle(lambda, r)[static_cast<std::size_t>(n)];
  auto it = by_genus.find(g);
  return it == by_genus.end() ? Census{} : it->second;
}

TEST(ABPolys, Examples) {
  auto ab = ab_polys(1, 1);
  EXPECT_EQ(ab.A, BiPoly::constant(1));
  EXPECT_EQ(ab.B, BiPoly::from_x(P({1, -1})));
  ab = ab_polys(2, 1);
  EXPECT_EQ(ab.A, BiPoly::constant(1));
  EXPECT_EQ(ab.B, BiPoly::from_x(P({1, -1})) + term(1, 2, 1));
  ab = ab_polys(2, 2);
  const BiPoly a = BiPoly::constant(1) - term(1, 2, 1) + term(1, 4, 2);
  EXPECT_EQ(ab.A, a);
  EXPECT_EQ(ab.B, BiPoly::from_x(P({1, -1})) * a + term(1, 4, 2));
}

TEST(D0, MotzkinAtUnitLength) {
  auto d = d0_series(params(1, 1, 0, 8)).value();
  const std::vector<long> motzkin = {1, 1, 2, 4, 9, 21, 51, 127};
  for (std::size_t n = 0; n < motzkin.size(); ++n) EXPECT_EQ(d[n], motzkin[n]);
}

TEST(D0, NoOneArcs) {
  auto d = d0_series(params(2, 1, 0, 10)).value();
  EXPECT_EQ(d[4], 4);
  const std::vector<long> expect = {1, 1, 1, 2, 4, 8, 17, 37, 82, 185};
  for (std::size_t n = 0; n < expect.size(); ++n) EXPECT_EQ(d[n], expect[n]);
}

TEST(D0, ResidualVanishesToOrderSixty) {
  for (auto [l, r] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {2, 2}, {4, 3}}) {
    for (Rational y0 : {Rational(1), Rational(3, 2)}) {
      auto p = params(l, r, 0, 60, y0);
      auto res = d0_residual(p, d0_series(p));
      EXPECT_TRUE(res.value().is_zero());
      EXPECT_TRUE(res.d1().is_zero());
      EXPECT_TRUE(res.d2().is_zero());
    }
  }
}

TEST(D0, JetMatchesFiniteDifference) {
  // exact rational central differences at y = 1 +- h
  const Rational h(1, 1000000);
  const auto centre = d0_series(params(2, 2, 0, 16));
  const auto up = d0_series(params(2, 2, 0, 16, 1 + h)).value();
  const auto down = d0_series(params(2, 2, 0, 16, 1 - h)).value();
  const auto mid = centre.value();
  for (std::size_t n = 0; n < 16; ++n) {
    const Rational fd1 = (up[n] - down[n]) / (2 * h);
    const Rational fd2 = (up[n] - 2 * mid[n] + down[n]) / (h * h);
    EXPECT_NEAR(fd1.get_d(), centre.d1()[n].get_d(), 1e-6 * (1 + std::abs(centre.d1()[n].get_d())));
    EXPECT_NEAR(fd2.get_d(), centre.d2()[n].get_d(), 1e-4 * (1 + std::abs(centre.d2()[n].get_d())));
  }
}

TEST(Dg, GenusOneLeadingCoefficients) {
  auto d = dg_series(params(1, 1, 1, 8)).value();
  EXPECT_EQ(d[4], 1);
  EXPECT_EQ(d[5], 5);
}

TEST(Dg, VanishesBelowFourG) {
  for (int g = 1; g <= 2; ++g) {
    auto d = dg_series(params(1, 1, g, 4 * g + 1));
    for (int n = 0; n < 4 * g; ++n) EXPECT_EQ(d.value()[static_cast<std::size_t>(n)], 0);
    EXPECT_GT(d.value()[static_cast<std::size_t>(4 * g)], 0);
  }
}

TEST(Dg, TwoRoutesAgreeToOrderForty) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 1; g <= 2; ++g) {
      expect_jets_equal(dg_series(params(l, r, g, 40)), dg_via_cg(params(l, r, g, 40)));
    }
  }
  expect_jets_equal(dg_series(params(2, 1, 1, 20, 2)), dg_via_cg(params(2, 1, 1, 20, 2)));
}

TEST(Dg, ArcSupport) {
  // d_g(n, l) = 0 unless 2gr <= l <= n/2
  for (auto [l, r] : kOracleParams) {
    for (int g = 1; g <= 2; ++g) {
      for (int n = 4 * g; n <= 14; ++n) {
        const auto counts = arc_counts(params(l, r, g, 20), n);
        for (std::size_t k = 0; k < counts.size(); ++k)
          if (static_cast<int>(k) < 2 * g * r) EXPECT_EQ(counts[k], 0);
      }
    }
  }
}

TEST(Params, RejectsLongMinimumArcsAtPositiveGenus) {
  EXPECT_THROW(check_params(params(3, 1, 1, 10)), ParameterError);
  EXPECT_NO_THROW(check_params(params(3, 1, 0, 10)));
  EXPECT_THROW(dg_series(params(3, 1, 1, 10)), ParameterError);
}

TEST(LoopMarked, HairpinAtLengthThree) {
  auto d = loop_marked_d0(LoopKind::Hairpin, 2, 1, 6);
  EXPECT_EQ(d.d1()[3], 1);
}

TEST(LoopMarked, UnmarkingGivesPlainSeries) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 0; g <= 2; ++g) {
      const auto plain = structures_series(params(l, r, g, 30)).value();
      for (auto k : kLoopKinds) {
        EXPECT_EQ(loop_marked_dg(k, params(l, r, g, 30)).value(), plain) << to_string(k);
        EXPECT_EQ(loop_marked_dg_exact(k, params(l, r, g, 30)).value(), plain) << to_string(k);
      }
    }
  }
}

TEST(LoopMarked, StackMarkingAtOneIsPlainInflation) {
  for (int g = 1; g <= 2; ++g) {
    EXPECT_EQ(loop_marked_dg(LoopKind::Stack, params(1, 1, g, 24)).value(),
              dg_series(params(1, 1, g, 24)).value());
  }
}

TEST(LoopMarked, MatchesLoopCensus) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 0; g <= 2; ++g) {
      for (auto k : kLoopKinds) {
        const auto jet = loop_marked_dg_exact(k, params(l, r, g, kOracleN + 1));
        for (int n = 0; n <= kOracleN; ++n) {
          const auto c = oracle_at(l, r, g, n);
          const auto i = static_cast<std::size_t>(n);
          EXPECT_EQ(jet.d1()[i], Q(c.loop(k).first)) << to_string(k) << " g=" << g << " n=" << n;
          EXPECT_EQ(jet.d2()[i], Q(c.loop(k).falling2)) << to_string(k) << " g=" << g << " n=" << n;
        }
      }
    }
  }
}

TEST(LoopMarked, InducedStackFormMissesShapeLevelMultiLoops) {
  // "(([)(]))" closes a multi-loop around the K pattern at shape level
  const auto plain = loop_marked_dg(LoopKind::Multi, params(1, 1, 1, 9));
  const auto exact = loop_marked_dg_exact(LoopKind::Multi, params(1, 1, 1, 9));
  EXPECT_EQ(plain.d1()[8], 4);
  EXPECT_EQ(exact.d1()[8], 5);
  EXPECT_EQ(count_loops(parse_structure("(([)(]))"))[LoopKind::Multi], 1);
  for (LoopKind k : {LoopKind::Stack, LoopKind::Hairpin, LoopKind::Bulge, LoopKind::Interior})
    expect_jets_equal(loop_marked_dg(k, params(1, 1, 2, 16)), loop_marked_dg_exact(k, params(1, 1, 2, 16)));
}

TEST(ShapeMultiPoly, TableMatchesLiveEnumeration) {
  EXPECT_EQ(shape_multi_poly(2, 9), shape_multi_loop_poly(2, 9));
  EXPECT_EQ(shape_multi_poly(2, 11).at_y_one(), shape_poly(2));
  EXPECT_EQ(shape_multi_poly(1, 5).at_y_one(), shape_poly(1));
}

TEST(PkMarked, UniqueStructureAtLengthFour) {
  const auto p = params(1, 1, 1, 6);
  EXPECT_EQ(pk_marked_dg(PkKind::H, p).d1()[4], 1);
  for (PkKind k : {PkKind::K, PkKind::L, PkKind::M}) EXPECT_EQ(pk_marked_dg(k, p).d1()[4], 0);
}

TEST(PkMarked, GenusOneHasExactlyOneBlock) {
  const auto p = params(1, 1, 1, 15);
  const auto total = dg_series(p).value();
  TruncatedSeries sum(15);
  for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) sum += pk_marked_dg(k, p).d1();
  for (std::size_t n = 4; n < 15; ++n) EXPECT_EQ(sum[n], total[n]);
}

TEST(PkMarked, MatchesClassificationCensus) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 1; g <= 2; ++g) {
      for (PkKind k : {PkKind::H, PkKind::K, PkKind::L, PkKind::M}) {
        const auto jet = pk_marked_dg(k, params(l, r, g, kOracleN + 1));
        for (int n = 0; n <= kOracleN; ++n) {
          const auto c = oracle_at(l, r, g, n);
          const auto i = static_cast<std::size_t>(n);
          EXPECT_EQ(jet.value()[i], Q(c.structures));
          EXPECT_EQ(jet.d1()[i], Q(c.pseudoknot(k).first)) << to_string(k) << " g=" << g << " n=" << n;
          EXPECT_EQ(jet.d2()[i], Q(c.pseudoknot(k).falling2)) << to_string(k) << " g=" << g << " n=" << n;
        }
      }
    }
  }
}

TEST(Structures, MatchArcCensus) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 0; g <= 2; ++g) {
      const auto jet = structures_series(params(l, r, g, kOracleN + 1));
      for (int n = 0; n <= kOracleN; ++n) {
        const auto c = oracle_at(l, r, g, n);
        const auto i = static_cast<std::size_t>(n);
        EXPECT_EQ(jet.value()[i], Q(c.structures)) << "g=" << g << " n=" << n;
        EXPECT_EQ(jet.d1()[i], Q(c.arcs.first));
        EXPECT_EQ(jet.d2()[i], Q(c.arcs.falling2));
      }
    }
  }
}

TEST(ArcDistribution, UniqueGenusOneStructure) {
  auto dist = arc_distribution(params(1, 1, 1, 10), 4);
  ASSERT_EQ(dist.size(), 3u);
  EXPECT_EQ(dist[2], 1);
  EXPECT_EQ(dist[0], 0);
}

TEST(ArcDistribution, SumsToOneAndMatchesJetMean) {
  for (auto [l, r] : kOracleParams) {
    for (int g = 0; g <= 2; ++g) {
      for (int n = 4 * g * r + 1; n <= 14; n += 3) {
        const auto p = params(l, r, g, 16);
        const auto dist = arc_distribution(p, n);
        Rational total = 0, mean = 0, second = 0;
        for (std::size_t k = 0; k < dist.size(); ++k) {
          total += dist[k];
          mean += dist[k] * static_cast<long>(k);
          second += dist[k] * static_cast<long>(k * k);
        }
        EXPECT_EQ(total, 1);
        const auto m = moments(p, n);
        EXPECT_EQ(m.mean, mean);
        EXPECT_EQ(m.variance, second - mean * mean);
      }
    }
  }
}

TEST(ArcDistribution, MatchesArcHistogram) {
  for (int n = 4; n <= kOracleN; ++n) {
    const auto counts = arc_counts(params(1, 1, 1, 16), n);
    const auto c = oracle_at(1, 1, 1, n);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      auto it = c.arc_histogram.find(static_cast<int>(k));
      EXPECT_EQ(counts[k], it == c.arc_histogram.end() ? 0 : it->second);
    }
  }
}

}  // namespace
}  // namespace toporna
