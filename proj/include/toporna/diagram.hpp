#pragma once

// Diagrams: vertices 1..n on a backbone with a partial matching drawn in the
// upper half-plane. Everything here is a pure function of an immutable Diagram.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace toporna {

struct Arc {
  int i = 0;
  int j = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

class DiagramError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by parse_structure; column is 1-based.
class ParseError : public DiagramError {
 public:
  ParseError(const std::string& what, std::size_t column)
      : DiagramError(what + " at column " + std::to_string(column)), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

class Diagram {
 public:
  Diagram() = default;
  /// Validates 1 <= i < j <= n and that endpoints are pairwise distinct.
  Diagram(int n, std::vector<Arc> arcs);
  /// Builds from a partner vector indexed 1..n (entry 0 ignored, 0 = unpaired).
  static Diagram from_partners(std::vector<int> partner);

  int n() const { return n_; }
  /// Arcs sorted by left endpoint.
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }
  /// Partner of vertex v, or 0 when v is unpaired.
  int partner(int v) const { return partner_.at(static_cast<std::size_t>(v)); }
  const std::vector<int>& partners() const { return partner_; }
  bool has_arc(int i, int j) const;

  friend bool operator==(const Diagram& a, const Diagram& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }
  friend bool operator<(const Diagram& a, const Diagram& b) {
    return a.n_ != b.n_ ? a.n_ < b.n_ : a.partner_ < b.partner_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> partner_{0};
};

inline bool crossing(const Arc& a, const Arc& b) {
  return (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
}

/// Relabels the endpoints of an arc set to 1..2m, keeping their order.
Diagram compact(const std::vector<Arc>& arcs);

Diagram parse_structure(std::string_view text);
std::string emit_structure(const Diagram& d);

struct GenusResult {
  int genus = 0;
  int boundary_count = 1;
  int euler = 2;
};

GenusResult genus(const Diagram& d);

Diagram project_shape(const Diagram& d);
Diagram project_shadow(const Diagram& d);

/// Connected components of the crossing graph, each sorted, ordered by first arc.
std::vector<std::vector<Arc>> arc_components(const Diagram& d);
/// True when the crossing graph of a nonempty diagram is connected.
bool is_irreducible(const Diagram& d);

struct Block {
  std::vector<Arc> arcs;
  std::vector<int> interior;  // immediately interior unpaired vertices
  std::vector<std::size_t> children;
  std::optional<std::size_t> parent;
};

struct BlockDecomposition {
  std::vector<int> exterior;
  std::vector<Block> blocks;  // in order of leftmost endpoint
  std::vector<std::size_t> roots;
};

BlockDecomposition block_decomposition(const Diagram& d);

enum class PkKind { H, K, L, M, HigherGenus, SecondaryTrivial };

struct PkClass {
  PkKind kind = PkKind::SecondaryTrivial;
  int genus = 0;
  friend bool operator==(const PkClass&, const PkClass&) = default;
};

std::string to_string(PkKind kind);
std::string to_string(const PkClass& c);

/// The genus-1 irreducible shadows. Swapping the K and L entries here flips the
/// labeling everywhere else.
struct ShadowCatalogEntry {
  PkKind kind;
  std::vector<Arc> arcs;
};
const std::array<ShadowCatalogEntry, 4>& genus_one_catalog();

PkClass classify_component(const Diagram& d, const std::vector<Arc>& component);

bool validate_constraints(const Diagram& d, int lambda, int r);

/// Lengths of all maximal stacks, ordered by the outermost arc's left endpoint.
std::vector<int> stack_lengths(const Diagram& d);

enum class LoopKind { Stack, Hairpin, Bulge, Interior, Multi };
inline constexpr std::array<LoopKind, 5> kLoopKinds = {LoopKind::Stack, LoopKind::Hairpin,
                                                       LoopKind::Bulge, LoopKind::Interior,
                                                       LoopKind::Multi};
std::string to_string(LoopKind kind);
LoopKind loop_kind_from_string(std::string_view s);

struct LoopCounts {
  std::array<long, 5> by_kind{};
  long operator[](LoopKind k) const { return by_kind[static_cast<std::size_t>(k)]; }
  long& operator[](LoopKind k) { return by_kind[static_cast<std::size_t>(k)]; }
};

/// Loop census of one diagram, applying each loop definition literally to
/// every arc as the closing arc.
LoopCounts count_loops(const Diagram& d);

struct PkCounts {
  long h = 0, k = 0, l = 0, m = 0, higher = 0;
  long of(PkKind kind) const;
};

PkCounts count_pseudoknots(const Diagram& d);

}  // namespace toporna
