#pragma once

// Uniform random structures with fixed length, genus and (lambda, r): by
// listing the whole family at small n, or by a counting grammar that inflates
// shapes with stacks and secondary structures.

#include <cstdint>
#include <random>

#include "toporna/enumeration.hpp"

namespace toporna {

struct SampleSpec {
  int n = 12;
  int g = 1;
  int lambda = 1;
  int r = 1;
  long count = 1;
  std::uint64_t seed = 0;
};

class SamplerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kGrammarCap = 200;
inline constexpr const char* kGeneratorId = "mt19937_64+splitmix64";

std::uint64_t splitmix64(std::uint64_t x);
/// Independent stream for draw `index` under `seed`.
std::mt19937_64 draw_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform integer in [0, bound) using only the generator's output bits.
Integer uniform_below(const Integer& bound, std::mt19937_64& rng);

/// Counting tables for secondary structures with minimum arc length lambda
/// and minimum stack length r: all[m] structures of length m, closed[m] those
/// made of a single stack of at least r arcs spanning all m vertices.
struct SecondaryTables {
  int lambda = 1;
  int r = 1;
  std::vector<Integer> all;
  std::vector<Integer> closed;
  SecondaryTables(int lambda, int r, int n_max);
};

/// Draws `spec.count` structures uniformly from the listed family.
std::vector<Diagram> sample_enumerative(const SampleSpec& spec, int ceiling = 18);

/// Precomputed tables for grammar sampling at one (n, g, lambda, r).
class GrammarSampler {
 public:
  explicit GrammarSampler(const SampleSpec& spec, int shape_ceiling = 12);
  /// Total number of structures, d_g(n).
  const Integer& family_size() const { return total_; }
  Diagram draw(std::mt19937_64& rng) const;

 private:
  struct Stack;
  void secondary(std::vector<int>& partner, int offset, int m, bool spanning_allowed,
                 std::mt19937_64& rng) const;
  Stack induced_stack(int m, std::mt19937_64& rng) const;
  const std::vector<Integer>& power(int d_count, int h_count) const;

  SampleSpec spec_;
  SecondaryTables tables_;
  std::vector<Integer> stack_;    // one stack of >= r arcs, by length
  std::vector<Integer> gap_pair_; // two secondary structures, not both empty
  std::vector<Integer> induced_;  // induced stack of one shape arc
  std::vector<int> arc_counts_;   // k with a nonzero weight
  std::vector<Integer> k_weight_; // s_g(k) [x^n] D^{2k+1} H^k
  std::map<int, std::vector<Diagram>> shapes_;
  std::map<std::pair<int, int>, std::vector<Integer>> powers_;  // D^a H^b
  Integer total_;
};

std::vector<Diagram> sample_grammar(const SampleSpec& spec);

/// Census of a sample list (same statistics as the brute-force census).
Census empirical_stats(const std::vector<Diagram>& samples);

}  // namespace toporna
