#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kqm/errors.hpp"
#include "kqm/wire_type.hpp"

namespace kqm {

using Complex = std::complex<double>;

/// Generator variants form the Klein four-group: bit 0 is transposition,
/// bit 1 is complex conjugation, and dagger is both.
enum class Variant : std::uint8_t { plain = 0, transpose = 1, conjugate = 2, dagger = 3 };

inline Variant compose(Variant a, Variant b) {
  return static_cast<Variant>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}
inline bool transposes(Variant v) { return static_cast<std::uint8_t>(v) & 1U; }
inline bool conjugates(Variant v) { return static_cast<std::uint8_t>(v) & 2U; }
std::string to_string(Variant v);

/// A named box. `dom_plain`/`cod_plain` are the signature of the plain
/// variant; dom()/cod() account for the variant flag.
struct GeneratorSig {
  std::string name;
  WireType dom_plain;
  WireType cod_plain;
  Variant variant = Variant::plain;

  WireType dom() const;
  WireType cod() const;
  GeneratorSig with(Variant v) const { return {name, dom_plain, cod_plain, compose(variant, v)}; }

  friend bool operator==(const GeneratorSig&, const GeneratorSig&) = default;
};

enum class Kind : std::uint8_t { gen, id, swap, cap, cup, scalar, seq, par, variant };

/// Immutable diagram term. Copies share structure.
///
/// Leaves: generators, identities, swaps, caps, cups and numeric scalar
/// diamonds. Composites: Seq(d1, d2) runs d1 then d2 (so it evaluates to
/// d2 . d1), Par places side by side, and Variant is an unpushed
/// dagger/transpose/conjugate over a composite.
class Diagram {
 public:
  static Diagram gen(GeneratorSig sig);
  static Diagram gen(std::string name, WireType dom, WireType cod) {
    return gen(GeneratorSig{std::move(name), std::move(dom), std::move(cod), Variant::plain});
  }
  static Diagram id(WireType type);
  static Diagram swap(WireType left, WireType right);
  /// I -> w* & w
  static Diagram cap(Wire w);
  /// w* & w -> I
  static Diagram cup(Wire w);
  static Diagram scalar(Complex value);

  Kind kind() const;
  const WireType& dom() const;
  const WireType& cod() const;

  bool is_leaf() const;
  bool is_scalar_typed() const { return dom().is_unit() && cod().is_unit(); }

  const GeneratorSig& sig() const;      // gen
  const WireType& type() const;         // id
  const WireType& left() const;         // swap
  const WireType& right() const;        // swap
  const Wire& wire() const;             // cap, cup
  Complex value() const;                // scalar
  const Diagram& first() const;         // seq, par
  const Diagram& second() const;        // seq, par
  const Diagram& body() const;          // variant
  Variant variant() const;              // variant

  /// Number of term nodes.
  std::size_t size() const;

  /// Tree equality: no associativity, units or interchange. See
  /// structural_eq in rewrite.hpp for the coarser relation.
  friend bool operator==(const Diagram& a, const Diagram& b);

  struct Node;

 private:
  explicit Diagram(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend Diagram seq(const Diagram&, const Diagram&);
  friend Diagram par(const Diagram&, const Diagram&);
  friend Diagram lazy_variant(Variant, const Diagram&);

  std::shared_ptr<const Node> node_;
};

/// Sequential composition; throws TypeError unless cod(d1) == dom(d2).
Diagram seq(const Diagram& d1, const Diagram& d2);
Diagram par(const Diagram& d1, const Diagram& d2);

/// Left-to-right fold helpers: seq_all({a, b, c}) = Seq(Seq(a, b), c).
Diagram seq_all(const std::vector<Diagram>& ds);
Diagram par_all(const std::vector<Diagram>& ds);

enum class Mode : std::uint8_t { seq, par };
Diagram compose(Mode mode, const Diagram& d1, const Diagram& d2);

enum class Primitive : std::uint8_t { id, cap, cup, swap };
/// Identity takes one type, cap/cup one single-wire type, swap two types.
Diagram build_primitive(Primitive kind, const std::vector<WireType>& args);

/// Pushes the variant all the way to the leaves.
Diagram apply_variant(const Diagram& d, Variant v);

/// Variant applied to leaves immediately, kept as an unpushed node over
/// composites. Nested variant nodes merge.
Diagram lazy_variant(Variant v, const Diagram& d);

/// Signature of `d` after applying a variant: dagger swaps dom/cod,
/// transpose swaps and dualizes, conjugate dualizes in place.
WireType variant_dom(Variant v, const WireType& dom, const WireType& cod);
WireType variant_cod(Variant v, const WireType& dom, const WireType& cod);

}  // namespace kqm
