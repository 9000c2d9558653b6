#pragma once

// Brute-force ground truth: exhaustive generation of diagrams, shadows and
// shapes, and per-structure censuses aggregated over whole families.

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <tuple>

#include "toporna/bipoly.hpp"
#include "toporna/diagram.hpp"
#include "toporna/series.hpp"

namespace toporna {

class CeilingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct EnumFilter {
  int lambda = 1;
  int r = 1;
  std::optional<std::set<int>> genus_set;
  std::optional<std::pair<int, int>> arc_range;  // inclusive
  bool perfect_only = false;                     // no unpaired vertices
};

enum class Execution { Serial, Parallel };

struct EnumConfig {
  int ceiling = 18;
  Execution execution = Execution::Parallel;
};

/// Visits every diagram on n vertices passing the filter exactly once, in
/// lexicographic order of partner vectors (unpaired sorts first). Serial.
void enumerate_diagrams(int n, const EnumFilter& filter, const std::function<void(const Diagram&)>& visit,
                        int ceiling = 18);
std::vector<Diagram> list_diagrams(int n, const EnumFilter& filter, int ceiling = 18);

/// d(g, n, l): structures of genus g, length n, with l arcs.
using CountTable = std::map<std::tuple<int, int, int>, Integer>;
CountTable count_table(int n_max, int lambda, int r, const EnumConfig& cfg = {});

/// Sums of a per-structure statistic X: sum X and sum X(X-1), the two
/// quantities matched by the first and second y-derivatives.
struct StatSums {
  long first = 0;
  long falling2 = 0;
  void add(long x) {
    first += x;
    falling2 += x * (x - 1);
  }
  void merge(const StatSums& o) {
    first += o.first;
    falling2 += o.falling2;
  }
  friend bool operator==(const StatSums&, const StatSums&) = default;
};

inline constexpr std::array<PkKind, 5> kCensusPk = {PkKind::H, PkKind::K, PkKind::L, PkKind::M,
                                                    PkKind::HigherGenus};

struct Census {
  long structures = 0;
  StatSums arcs;
  std::array<StatSums, 5> loops{};  // indexed by LoopKind
  std::array<StatSums, 5> pk{};     // indexed like kCensusPk
  std::map<int, long> arc_histogram;

  const StatSums& loop(LoopKind k) const { return loops[static_cast<std::size_t>(k)]; }
  const StatSums& pseudoknot(PkKind k) const;
  void add(const Diagram& d);
  void merge(const Census& o);
  friend bool operator==(const Census&, const Census&) = default;
};

/// Census of all structures of length n and the given (lambda, r), split by
/// genus. Loop and pseudoknot statistics are gathered for every genus.
std::map<int, Census> census_by_genus(int n, int lambda, int r, const EnumConfig& cfg = {});
Census census_features(int n, int lambda, int r, int g, const EnumConfig& cfg = {});

struct ShadowRecord {
  Diagram diagram;
  int genus = 0;
  bool irreducible = false;
};

/// All shadows with the given number of arcs: perfect matchings without 1-arcs
/// or stacks in which every arc crosses another.
std::vector<ShadowRecord> enumerate_shadows(int arc_count, int ceiling = 7);

/// All genus-g shapes with the given number of arcs, by a DFS that prunes on
/// 1-arcs, stacks and partial genus.
std::vector<Diagram> enumerate_shapes(int g, int arc_count, int ceiling = 12);

/// Sum over genus-g shapes with at most max_arcs arcs of x^arcs y^t, where t
/// counts the multi-loops the shape closes on its own.
BiPoly shape_multi_loop_poly(int g, int max_arcs, int ceiling = 12);

}  // namespace toporna
