#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kqm/diagram.hpp"

namespace kqm {

/// One box of a sliced diagram: Id(left) & box & Id(right), where `offset`
/// is the number of wires to the left. Boxes are leaves or opaque variant
/// nodes.
struct Slice {
  std::size_t offset = 0;
  Diagram box;

  std::size_t in() const { return box.dom().size(); }
  std::size_t out() const { return box.cod().size(); }
};

/// A diagram as a sequence of single-box layers over a fixed domain. This is
/// the interchange-law view of a term: associativity and unit laws vanish
/// on conversion.
struct Sliced {
  WireType dom;
  std::vector<Slice> slices;

  static Sliced from_term(const Diagram& d);
  WireType cod() const;
  /// Left-nested Seq of layers Par(Par(Id(L), box), Id(R)); Id(dom) when empty.
  Diagram to_term() const;
};

/// A body plus scalar components floated to the leftmost Par slots.
struct Layered {
  std::vector<Sliced> scalars;
  Sliced body;

  /// Peels scalar-typed left operands off the top-level Par spine.
  static Layered from_term(const Diagram& d);
  Diagram to_term() const;
};

/// Adjacent slices s1 then s2 can be exchanged when s2 acts entirely left or
/// entirely right of s1's outputs.
bool commutes(const Slice& s1, const Slice& s2);
/// Exchanges an adjacent commuting pair, fixing up offsets.
void swap_adjacent(std::vector<Slice>& slices, std::size_t i);

/// Bubbles boxes that act strictly left of their predecessor earlier until
/// no such pair remains.
void left_normalize(std::vector<Slice>& slices);

/// Wire bookkeeping for a sliced diagram. Producer/consumer slice -1 means
/// the boundary.
struct WireGraph {
  struct End {
    int slice = -1;
    std::size_t port = 0;
  };
  struct WireInfo {
    End producer;
    End consumer;
  };
  std::vector<WireInfo> wires;
  std::vector<std::vector<std::size_t>> inputs;   // per slice: wire ids consumed
  std::vector<std::vector<std::size_t>> outputs;  // per slice: wire ids produced
  std::vector<std::size_t> boundary_in;
  std::vector<std::size_t> boundary_out;
  /// For every slice, the wire ids of the frontier just before it.
  std::vector<std::vector<std::size_t>> frontier_before;

  static WireGraph build(const Sliced& s);
};

/// Connected components of slices with no boundary wires, as sorted lists
/// of slice indices, ordered by their first slice.
std::vector<std::vector<std::size_t>> closed_components(const Sliced& s);

/// Restricts a sliced diagram to a subset of its slices whose wires are not
/// shared with the rest. Offsets are recomputed against the sub-frontier.
Sliced restrict_to(const Sliced& s, const std::vector<std::size_t>& subset, const WireType& sub_dom);

/// A 1 -> 1 generator box: the only kind the sliding rules move.
bool is_slidable(const Diagram& box);

/// Moves slice `target` (> anchor) so that it directly follows `anchor`,
/// using only valid interchanges. Intervening slices move before the anchor
/// when they can and stay after the target otherwise. Returns the new
/// anchor index.
std::optional<std::size_t> bring_after(std::vector<Slice>& slices, std::size_t anchor, std::size_t target);
/// Mirror of bring_after: moves slice `target` (< anchor) to directly
/// precede `anchor`. Returns the new anchor index.
std::optional<std::size_t> bring_before(std::vector<Slice>& slices, std::size_t anchor, std::size_t target);

/// Compact deterministic rendering used for ordering and debugging.
std::string debug_string(const Diagram& d);

}  // namespace kqm
