#include "toporna/enumeration.hpp"

#include <algorithm>

namespace toporna {

namespace {

struct WalkOptions {
  EnumFilter filter;
  bool forbid_stacks = false;  // shapes and shadows have stacks of length one
  int genus_cap = -1;          // prune partial diagrams above this genus
};

// Depth-first search over partial matchings. partner_[v] is 0 while v is
// undecided, -1 once it is unpaired, and its partner otherwise. The smallest
// undecided vertex is always the next decision.
class Walker {
 public:
  Walker(int n, WalkOptions opts, std::function<void(const Diagram&)> leaf)
      : n_(n),
        opts_(std::move(opts)),
        leaf_(std::move(leaf)),
        partner_(static_cast<std::size_t>(n) + 1, 0),
        next_end_(static_cast<std::size_t>(n) + 1, 0),
        seen_(static_cast<std::size_t>(n) + 1, 0) {}

  /// Choices available for vertex 1, in visiting order (0 = unpaired).
  std::vector<int> first_choices() const {
    std::vector<int> out;
    if (n_ == 0) return out;
    if (!opts_.filter.perfect_only) out.push_back(0);
    for (int j = 1 + opts_.filter.lambda; j <= n_; ++j) out.push_back(j);
    return out;
  }

  void run() { rec(1); }

  void run_branch(int choice) {
    if (n_ == 0) {
      rec(1);
      return;
    }
    if (choice == 0) {
      partner_[1] = -1;
      rec(2);
      partner_[1] = 0;
    } else {
      pair(1, choice);
      if (partial_genus_ok(1, choice)) {
        rec(2);
        pop_genus();
      }
      unpair(1, choice);
    }
  }

 private:
  void pair(int v, int j) {
    partner_[v] = j;
    partner_[j] = v;
    ++arcs_;
  }
  void unpair(int v, int j) {
    partner_[v] = 0;
    partner_[j] = 0;
    --arcs_;
  }

  bool is_left_end(int u) const { return u >= 1 && partner_[u] > u; }

  // Length of the stack whose innermost arc starts at u.
  int stack_length_ending(int u) const {
    const int p = partner_[u];
    int len = 1;
    while (u - len >= 1 && partner_[u - len] == p + len) ++len;
    return len;
  }

  bool closed_stack_ok(int u) const { return !is_left_end(u) || stack_length_ending(u) >= opts_.filter.r; }

  // Called right after pair(v, j). Updates the running genus, which can only
  // change when the new arc crosses an earlier one.
  bool partial_genus_ok(int v, int j) {
    if (opts_.genus_cap < 0) return true;
    const int before = genus_stack_.empty() ? 0 : genus_stack_.back();
    bool crosses = false;
    for (int w = v + 1; w < j && !crosses; ++w) crosses = partner_[w] > 0 && partner_[w] < v;
    const int now = crosses ? arc_genus() : before;
    if (now > opts_.genus_cap) return false;
    genus_stack_.push_back(now);
    return true;
  }

  // Genus of the decided arcs alone, from the boundary cycles of the matching
  // with the backbone collapsed: 2g = arcs + 1 - boundaries. Agrees with genus().
  void pop_genus() {
    if (opts_.genus_cap >= 0) genus_stack_.pop_back();
  }

  int arc_genus() {
    if (arcs_ == 0) return 0;
    int first = 0, prev = 0;
    for (int v = 1; v <= n_; ++v) {
      if (partner_[v] <= 0) continue;
      if (prev == 0) first = v;
      else next_end_[prev] = v;
      prev = v;
    }
    next_end_[prev] = first;
    ++stamp_;
    int boundaries = 0;
    for (int v = first; v <= n_; ++v) {
      if (partner_[v] <= 0 || seen_[v] == stamp_) continue;
      ++boundaries;
      for (int w = v; seen_[w] != stamp_; w = partner_[next_end_[w]]) seen_[w] = stamp_;
    }
    return (arcs_ + 1 - boundaries) / 2;
  }

  Diagram current() const {
    std::vector<Arc> arcs;
    for (int v = 1; v <= n_; ++v)
      if (partner_[v] > v) arcs.push_back({v, partner_[v]});
    return Diagram(n_, std::move(arcs));
  }

  void rec(int v) {
    while (v <= n_ && partner_[v] != 0) {
      // v is the right end of an earlier arc, so any stack ending at v-1 is closed
      if (!closed_stack_ok(v - 1)) return;
      ++v;
    }
    const auto& range = opts_.filter.arc_range;
    if (v > n_) {
      if (range && (arcs_ < range->first || arcs_ > range->second)) return;
      if (opts_.filter.genus_set && !opts_.filter.genus_set->count(arc_genus())) return;
      leaf_(current());
      return;
    }
    if (range) {
      int undecided = 0;
      for (int w = v; w <= n_; ++w) undecided += partner_[w] == 0;
      if (arcs_ + undecided / 2 < range->first) return;
    }
    const bool prev_closes_ok = closed_stack_ok(v - 1);
    const int continue_with = is_left_end(v - 1) ? partner_[v - 1] - 1 : -1;
    if (!opts_.filter.perfect_only && prev_closes_ok) {
      partner_[v] = -1;
      rec(v + 1);
      partner_[v] = 0;
    }
    if (range && arcs_ >= range->second) return;
    for (int j = v + opts_.filter.lambda; j <= n_; ++j) {
      if (partner_[j] != 0) continue;
      const bool continues = j == continue_with;
      if (continues ? opts_.forbid_stacks : !prev_closes_ok) continue;
      pair(v, j);
      if (partial_genus_ok(v, j)) {
        rec(v + 1);
        pop_genus();
      }
      unpair(v, j);
    }
  }

  int n_;
  WalkOptions opts_;
  std::function<void(const Diagram&)> leaf_;
  std::vector<int> partner_;
  std::vector<int> next_end_;  // next arc endpoint to the right, cyclically
  std::vector<unsigned> seen_;
  unsigned stamp_ = 0;
  std::vector<int> genus_stack_;
  int arcs_ = 0;
};

void check_ceiling(int n, int ceiling, const char* what) {
  if (ceiling > 24) throw CeilingError("ceiling may not exceed 24");
  if (n > ceiling) {
    throw CeilingError(std::string(what) + " " + std::to_string(n) + " exceeds the ceiling " +
                       std::to_string(ceiling));
  }
}

// Runs one walker per choice at vertex 1 and merges worker-local accumulators
// in branch order, so the result does not depend on the thread count.
template <class Acc, class Leaf, class Merge>
Acc partitioned_walk(int n, const WalkOptions& opts, Execution exec, Leaf leaf, Merge merge) {
  const std::vector<int> choices = Walker(n, opts, nullptr).first_choices();
  if (choices.empty()) {
    Acc acc{};
    Walker(n, opts, [&](const Diagram& d) { leaf(acc, d); }).run();
    return acc;
  }
  std::vector<Acc> parts(choices.size());
  const auto body = [&](std::size_t b) {
    Acc& acc = parts[b];
    Walker w(n, opts, [&](const Diagram& d) { leaf(acc, d); });
    w.run_branch(choices[b]);
  };
  const auto count = static_cast<long>(choices.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long b = 0; b < count; ++b) body(static_cast<std::size_t>(b));
  } else {
    for (long b = 0; b < count; ++b) body(static_cast<std::size_t>(b));
  }
  Acc out{};
  for (const auto& part : parts) merge(out, part);
  return out;
}

std::size_t pk_index(PkKind k) {
  for (std::size_t i = 0; i < kCensusPk.size(); ++i)
    if (kCensusPk[i] == k) return i;
  throw std::invalid_argument("no census slot for pseudoknot kind " + to_string(k));
}

}  // namespace

void enumerate_diagrams(int n, const EnumFilter& filter, const std::function<void(const Diagram&)>& visit,
                        int ceiling) {
  check_ceiling(n, ceiling, "length");
  if (filter.lambda < 1 || filter.r < 1) throw std::invalid_argument("lambda and r must be at least 1");
  Walker(n, WalkOptions{filter, false, -1}, visit).run();
}

std::vector<Diagram> list_diagrams(int n, const EnumFilter& filter, int ceiling) {
  std::vector<Diagram> out;
  enumerate_diagrams(n, filter, [&](const Diagram& d) { out.push_back(d); }, ceiling);
  return out;
}

CountTable count_table(int n_max, int lambda, int r, const EnumConfig& cfg) {
  check_ceiling(n_max, cfg.ceiling, "length");
  CountTable table;
  using Local = std::map<std::pair<int, int>, long long>;
  for (int n = 0; n <= n_max; ++n) {
    WalkOptions opts{EnumFilter{lambda, r, std::nullopt, std::nullopt, false}, false, -1};
    const Local local = partitioned_walk<Local>(
        n, opts, cfg.execution,
        [](Local& acc, const Diagram& d) {
          ++acc[{genus(d).genus, static_cast<int>(d.arc_count())}];
        },
        [](Local& out, const Local& part) {
          for (const auto& [k, v] : part) out[k] += v;
        });
    for (const auto& [k, v] : local) table[{k.first, n, k.second}] = Integer(static_cast<long>(v));
  }
  return table;
}

const StatSums& Census::pseudoknot(PkKind k) const { return pk[pk_index(k)]; }

void Census::add(const Diagram& d) {
  ++structures;
  const auto m = static_cast<long>(d.arc_count());
  arcs.add(m);
  ++arc_histogram[static_cast<int>(m)];
  const LoopCounts lc = count_loops(d);
  for (auto k : kLoopKinds) loops[static_cast<std::size_t>(k)].add(lc[k]);
  const PkCounts pc = count_pseudoknots(d);
  for (std::size_t i = 0; i < kCensusPk.size(); ++i) pk[i].add(pc.of(kCensusPk[i]));
}

void Census::merge(const Census& o) {
  structures += o.structures;
  arcs.merge(o.arcs);
  for (std::size_t i = 0; i < loops.size(); ++i) loops[i].merge(o.loops[i]);
  for (std::size_t i = 0; i < pk.size(); ++i) pk[i].merge(o.pk[i]);
  for (const auto& [l, c] : o.arc_histogram) arc_histogram[l] += c;
}

std::map<int, Census> census_by_genus(int n, int lambda, int r, const EnumConfig& cfg) {
  check_ceiling(n, cfg.ceiling, "length");
  using Local = std::map<int, Census>;
  WalkOptions opts{EnumFilter{lambda, r, std::nullopt, std::nullopt, false}, false, -1};
  return partitioned_walk<Local>(
      n, opts, cfg.execution, [](Local& acc, const Diagram& d) { acc[genus(d).genus].add(d); },
      [](Local& out, const Local& part) {
        for (const auto& [g, c] : part) out[g].merge(c);
      });
}

Census census_features(int n, int lambda, int r, int g, const EnumConfig& cfg) {
  check_ceiling(n, cfg.ceiling, "length");
  WalkOptions opts{EnumFilter{lambda, r, std::set<int>{g}, std::nullopt, false}, false, -1};
  return partitioned_walk<Census>(
      n, opts, cfg.execution, [](Census& acc, const Diagram& d) { acc.add(d); },
      [](Census& out, const Census& part) { out.merge(part); });
}

std::vector<ShadowRecord> enumerate_shadows(int arc_count, int ceiling) {
  check_ceiling(arc_count, ceiling, "arc count");
  std::vector<ShadowRecord> out;
  WalkOptions opts{EnumFilter{2, 1, std::nullopt, std::nullopt, true}, true, -1};
  Walker(2 * arc_count, opts, [&](const Diagram& d) {
    const auto& arcs = d.arcs();
    for (const auto& a : arcs) {
      if (std::none_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return crossing(a, b); })) return;
    }
    out.push_back({d, genus(d).genus, is_irreducible(d)});
  }).run();
  return out;
}

std::vector<Diagram> enumerate_shapes(int g, int arc_count, int ceiling) {
  check_ceiling(arc_count, ceiling, "arc count");
  std::vector<Diagram> out;
  WalkOptions opts{EnumFilter{2, 1, std::set<int>{g}, std::nullopt, true}, true, g};
  Walker(2 * arc_count, opts, [&](const Diagram& d) { out.push_back(d); }).run();
  return out;
}

BiPoly shape_multi_loop_poly(int g, int max_arcs, int ceiling) {
  BiPoly out;
  for (int k = 2 * g; k <= std::min(max_arcs, 6 * g - 1); ++k) {
    for (const auto& d : enumerate_shapes(g, k, ceiling)) {
      const auto t = static_cast<std::size_t>(count_loops(d)[LoopKind::Multi]);
      out += BiPoly::monomial(1, static_cast<std::size_t>(k), t);
    }
  }
  return out;
}

}  // namespace toporna
