#include "toporna/diagram.hpp"

#include <algorithm>
#include <numeric>

namespace toporna {

namespace {

// Bracket pages in emission order; 4 symbol pairs then Aa..Zz.
struct Page {
  char open;
  char close;
};

const std::vector<Page>& pages() {
  static const std::vector<Page> p = [] {
    std::vector<Page> v{{'(', ')'}, {'[', ']'}, {'{', '}'}, {'<', '>'}};
    for (char c = 'A'; c <= 'Z'; ++c) v.push_back({c, static_cast<char>(c - 'A' + 'a')});
    return v;
  }();
  return p;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// One pass of each shape reduction. Returns true if anything changed.
bool drop_unpaired(Diagram& d) {
  if (static_cast<std::size_t>(d.n()) == 2 * d.arc_count()) return false;
  d = compact(d.arcs());
  return true;
}

bool drop_one_arcs(Diagram& d) {
  std::vector<Arc> keep;
  for (const auto& a : d.arcs()) {
    if (a.j != a.i + 1) keep.push_back(a);
  }
  if (keep.size() == d.arc_count()) return false;
  d = compact(keep);
  return true;
}

bool collapse_stacks(Diagram& d) {
  std::vector<Arc> keep;
  for (const auto& a : d.arcs()) {
    if (!d.has_arc(a.i - 1, a.j + 1)) keep.push_back(a);
  }
  if (keep.size() == d.arc_count()) return false;
  d = compact(keep);
  return true;
}

bool drop_noncrossing(Diagram& d) {
  std::vector<Arc> keep;
  const auto& arcs = d.arcs();
  for (const auto& a : arcs) {
    if (std::any_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return crossing(a, b); })) {
      keep.push_back(a);
    }
  }
  if (keep.size() == d.arc_count()) return false;
  d = compact(keep);
  return true;
}

}  // namespace

Diagram::Diagram(int n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw DiagramError("diagram length must be non-negative");
  partner_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& a : arcs_) {
    if (a.i < 1 || a.j > n || a.i >= a.j) {
      throw DiagramError("invalid arc (" + std::to_string(a.i) + "," + std::to_string(a.j) + ")");
    }
    if (partner_[a.i] != 0 || partner_[a.j] != 0) {
      throw DiagramError("arcs share an endpoint at (" + std::to_string(a.i) + "," +
                         std::to_string(a.j) + ")");
    }
    partner_[a.i] = a.j;
    partner_[a.j] = a.i;
  }
  std::sort(arcs_.begin(), arcs_.end());
}

Diagram Diagram::from_partners(std::vector<int> partner) {
  if (partner.empty()) return Diagram();
  const int n = static_cast<int>(partner.size()) - 1;
  std::vector<Arc> arcs;
  for (int v = 1; v <= n; ++v) {
    const int w = partner[v];
    if (w > v) arcs.push_back({v, w});
    if (w != 0 && (w < 1 || w > n || partner[w] != v)) {
      throw DiagramError("partner vector is not an involution at vertex " + std::to_string(v));
    }
  }
  return Diagram(n, std::move(arcs));
}

bool Diagram::has_arc(int i, int j) const {
  if (i < 1 || j > n_ || i >= j) return false;
  return partner_[i] == j;
}

Diagram compact(const std::vector<Arc>& arcs) {
  std::vector<int> ends;
  for (const auto& a : arcs) {
    ends.push_back(a.i);
    ends.push_back(a.j);
  }
  std::sort(ends.begin(), ends.end());
  auto rank = [&](int v) {
    return static_cast<int>(std::lower_bound(ends.begin(), ends.end(), v) - ends.begin()) + 1;
  };
  std::vector<Arc> out;
  for (const auto& a : arcs) out.push_back({rank(a.i), rank(a.j)});
  return Diagram(static_cast<int>(ends.size()), std::move(out));
}

Diagram parse_structure(std::string_view text) {
  const auto& pg = pages();
  std::vector<std::vector<int>> open(pg.size());
  std::vector<Arc> arcs;
  for (std::size_t idx = 0; idx < text.size(); ++idx) {
    const char c = text[idx];
    const int v = static_cast<int>(idx) + 1;
    if (c == '.') continue;
    bool matched = false;
    for (std::size_t p = 0; p < pg.size(); ++p) {
      if (c == pg[p].open) {
        open[p].push_back(v);
        matched = true;
      } else if (c == pg[p].close) {
        if (open[p].empty()) throw ParseError(std::string("unmatched '") + c + "'", idx + 1);
        arcs.push_back({open[p].back(), v});
        open[p].pop_back();
        matched = true;
      }
      if (matched) break;
    }
    if (!matched) throw ParseError(std::string("unknown character '") + c + "'", idx + 1);
  }
  for (std::size_t p = 0; p < pg.size(); ++p) {
    if (!open[p].empty()) {
      throw ParseError(std::string("unmatched '") + pg[p].open + "'",
                       static_cast<std::size_t>(open[p].back()));
    }
  }
  return Diagram(static_cast<int>(text.size()), std::move(arcs));
}

std::string emit_structure(const Diagram& d) {
  const auto& pg = pages();
  std::vector<std::vector<Arc>> on_page;
  std::string out(static_cast<std::size_t>(d.n()), '.');
  for (const auto& a : d.arcs()) {
    std::size_t p = 0;
    while (p < on_page.size() &&
           std::any_of(on_page[p].begin(), on_page[p].end(),
                       [&](const Arc& b) { return crossing(a, b); })) {
      ++p;
    }
    if (p >= pg.size()) throw DiagramError("diagram needs more than 30 bracket pages");
    if (p == on_page.size()) on_page.emplace_back();
    on_page[p].push_back(a);
    out[static_cast<std::size_t>(a.i - 1)] = pg[p].open;
    out[static_cast<std::size_t>(a.j - 1)] = pg[p].close;
  }
  return out;
}

GenusResult genus(const Diagram& d) {
  const int n = d.n();
  // Half-edge 3(v-1)+s with s = 0 (backbone left), 1 (arc), 2 (backbone right).
  const auto id = [](int v, int s) { return static_cast<std::size_t>(3 * (v - 1) + s); };
  const std::size_t total = 3 * static_cast<std::size_t>(std::max(n, 0));
  std::vector<char> present(total, 0);
  for (int v = 1; v <= n; ++v) {
    present[id(v, 0)] = v > 1;
    present[id(v, 1)] = d.partner(v) != 0;
    present[id(v, 2)] = v < n;
  }
  const auto alpha = [&](std::size_t h) {
    const int v = static_cast<int>(h / 3) + 1;
    switch (h % 3) {
      case 0: return id(v - 1, 2);
      case 1: return id(d.partner(v), 1);
      default: return id(v + 1, 0);
    }
  };
  const auto sigma = [&](std::size_t h) {
    const std::size_t base = h - h % 3;
    std::size_t s = h % 3;
    do {
      s = (s + 1) % 3;
    } while (!present[base + s]);
    return base + s;
  };
  int boundary = 0;
  std::vector<char> seen(total, 0);
  for (std::size_t h = 0; h < total; ++h) {
    if (!present[h] || seen[h]) continue;
    ++boundary;
    for (std::size_t c = h; !seen[c]; c = sigma(alpha(c))) seen[c] = 1;
  }
  if (boundary == 0) boundary = 1;
  const int edges = std::max(n - 1, 0) + static_cast<int>(d.arc_count());
  const int vertices = std::max(n, 1);
  GenusResult res;
  res.boundary_count = boundary;
  res.euler = vertices - edges + boundary;
  res.genus = 1 - res.euler / 2;
  return res;
}

Diagram project_shape(const Diagram& d) {
  Diagram cur = d;
  bool changed = true;
  while (changed) {
    changed = drop_unpaired(cur);
    changed = drop_one_arcs(cur) || changed;
    changed = collapse_stacks(cur) || changed;
  }
  return cur;
}

Diagram project_shadow(const Diagram& d) {
  Diagram cur = project_shape(d);
  while (drop_noncrossing(cur)) cur = project_shape(cur);
  return cur;
}

std::vector<std::vector<Arc>> arc_components(const Diagram& d) {
  const auto& arcs = d.arcs();
  UnionFind uf(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a)
    for (std::size_t b = a + 1; b < arcs.size(); ++b)
      if (crossing(arcs[a], arcs[b])) uf.unite(a, b);
  std::vector<std::vector<Arc>> comps;
  std::vector<long> slot(arcs.size(), -1);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const std::size_t root = uf.find(a);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(slot[root])].push_back(arcs[a]);
  }
  return comps;
}

bool is_irreducible(const Diagram& d) {
  return d.arc_count() > 0 && arc_components(d).size() == 1;
}

BlockDecomposition block_decomposition(const Diagram& d) {
  BlockDecomposition out;
  const auto comps = arc_components(d);
  // Components are disjoint from each other's interiors or nested (laminar spans),
  // so a stack sweep over the backbone recovers the forest.
  std::vector<long> starts_at(static_cast<std::size_t>(d.n()) + 2, -1);
  std::vector<int> span_end(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    int lo = comps[c].front().i, hi = 0;
    for (const auto& a : comps[c]) hi = std::max(hi, a.j);
    starts_at[static_cast<std::size_t>(lo)] = static_cast<long>(c);
    span_end[c] = hi;
    Block b;
    b.arcs = comps[c];
    out.blocks.push_back(std::move(b));
  }
  std::vector<std::size_t> stack;
  for (int v = 1; v <= d.n(); ++v) {
    const long c = starts_at[static_cast<std::size_t>(v)];
    if (c >= 0) {
      const auto cu = static_cast<std::size_t>(c);
      if (stack.empty()) {
        out.roots.push_back(cu);
      } else {
        out.blocks[cu].parent = stack.back();
        out.blocks[stack.back()].children.push_back(cu);
      }
      stack.push_back(cu);
    }
    if (d.partner(v) == 0) {
      if (stack.empty()) out.exterior.push_back(v);
      else out.blocks[stack.back()].interior.push_back(v);
    }
    while (!stack.empty() && span_end[stack.back()] == v) stack.pop_back();
  }
  return out;
}

std::string to_string(PkKind kind) {
  switch (kind) {
    case PkKind::H: return "H";
    case PkKind::K: return "K";
    case PkKind::L: return "L";
    case PkKind::M: return "M";
    case PkKind::HigherGenus: return "higher";
    case PkKind::SecondaryTrivial: return "trivial";
  }
  return "?";
}

std::string to_string(const PkClass& c) {
  if (c.kind == PkKind::HigherGenus) return "higher(g=" + std::to_string(c.genus) + ")";
  return to_string(c.kind);
}

const std::array<ShadowCatalogEntry, 4>& genus_one_catalog() {
  static const std::array<ShadowCatalogEntry, 4> catalog = {{
      {PkKind::H, {{1, 3}, {2, 4}}},
      {PkKind::K, {{1, 3}, {2, 5}, {4, 6}}},
      {PkKind::L, {{1, 4}, {2, 5}, {3, 6}}},
      {PkKind::M, {{1, 4}, {2, 6}, {3, 7}, {5, 8}}},
  }};
  return catalog;
}

PkClass classify_component(const Diagram& d, const std::vector<Arc>& component) {
  for (const auto& a : component) {
    if (!d.has_arc(a.i, a.j)) throw DiagramError("component arc is not in the diagram");
  }
  if (component.size() == 1) return {PkKind::SecondaryTrivial, 0};
  const Diagram shadow = project_shadow(compact(component));
  if (!is_irreducible(shadow)) throw DiagramError("component does not project to an irreducible shadow");
  const int g = genus(shadow).genus;
  if (g >= 2) return {PkKind::HigherGenus, g};
  for (const auto& entry : genus_one_catalog()) {
    if (shadow.arcs() == entry.arcs) return {entry.kind, 1};
  }
  throw DiagramError("genus-1 shadow missing from the catalog: " + emit_structure(shadow));
}

std::vector<int> stack_lengths(const Diagram& d) {
  std::vector<int> out;
  for (const auto& a : d.arcs()) {
    if (d.has_arc(a.i - 1, a.j + 1)) continue;
    int len = 1;
    while (d.has_arc(a.i + len, a.j - len)) ++len;
    out.push_back(len);
  }
  return out;
}

bool validate_constraints(const Diagram& d, int lambda, int r) {
  for (const auto& a : d.arcs()) {
    if (a.j - a.i < lambda) return false;
  }
  const auto lens = stack_lengths(d);
  return std::all_of(lens.begin(), lens.end(), [&](int len) { return len >= r; });
}

std::string to_string(LoopKind kind) {
  switch (kind) {
    case LoopKind::Stack: return "stack";
    case LoopKind::Hairpin: return "hairpin";
    case LoopKind::Bulge: return "bulge";
    case LoopKind::Interior: return "interior";
    case LoopKind::Multi: return "multi";
  }
  return "?";
}

LoopKind loop_kind_from_string(std::string_view s) {
  for (auto k : kLoopKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown loop kind '" + std::string(s) + "'");
}

LoopCounts count_loops(const Diagram& d) {
  LoopCounts counts;
  counts[LoopKind::Stack] = static_cast<long>(stack_lengths(d).size());
  for (const auto& closing : d.arcs()) {
    // Split the interior into unpaired runs and complete inner arcs. Any arc
    // leaving the interior means this arc closes no loop.
    std::vector<Arc> inner;
    int left_gap = -1, right_gap = 0, run = 0;
    bool valid = true;
    for (int p = closing.i + 1; p < closing.j; ++p) {
      const int q = d.partner(p);
      if (q == 0) {
        ++run;
      } else if (q > p && q < closing.j) {
        if (left_gap < 0) left_gap = run;
        inner.push_back({p, q});
        run = 0;
        p = q;
      } else {
        valid = false;
        break;
      }
    }
    if (!valid) continue;
    right_gap = run;
    if (inner.empty()) {
      ++counts[LoopKind::Hairpin];
    } else if (inner.size() == 1) {
      if (left_gap == 0 && right_gap == 0) continue;  // stacked pair
      if (left_gap == 0 || right_gap == 0) ++counts[LoopKind::Bulge];
      else ++counts[LoopKind::Interior];
    } else {
      ++counts[LoopKind::Multi];
    }
  }
  return counts;
}

long PkCounts::of(PkKind kind) const {
  switch (kind) {
    case PkKind::H: return h;
    case PkKind::K: return k;
    case PkKind::L: return l;
    case PkKind::M: return m;
    case PkKind::HigherGenus: return higher;
    case PkKind::SecondaryTrivial: return 0;
  }
  return 0;
}

PkCounts count_pseudoknots(const Diagram& d) {
  PkCounts out;
  for (const auto& comp : arc_components(d)) {
    if (comp.size() == 1) continue;
    switch (classify_component(d, comp).kind) {
      case PkKind::H: ++out.h; break;
      case PkKind::K: ++out.k; break;
      case PkKind::L: ++out.l; break;
      case PkKind::M: ++out.m; break;
      case PkKind::HigherGenus: ++out.higher; break;
      case PkKind::SecondaryTrivial: break;
    }
  }
  return out;
}

}  // namespace toporna
