#pragma once

#include <cstddef>

#include "kqm/diagram.hpp"

namespace kqm {

enum class Side : std::uint8_t { state, costate };

/// Operation-labeled bipartite (co)state of a single-wire f : A -> B.
///   state:   (Id(A*) & f) . Cap(A)      : I -> A* & B
///   costate: Cup(B*) . (f & Id(B*))     : A & B* -> I
/// The identity-labeled state is the bare cap.
Diagram bipartite_of(const Diagram& f, Side side);
inline Diagram name(const Diagram& f) { return bipartite_of(f, Side::state); }
inline Diagram coname(const Diagram& f) { return bipartite_of(f, Side::costate); }

/// Recovers the map A -> B from a bipartite state I -> A* & B by bending
/// the left leg down with a cup.
Diagram unname(const Diagram& state);

/// Ket-bra projector built from f. The corrected form uses the conjugate
/// of f in its costate so that it is |name f><name f| : A* & B -> A* & B;
/// the uncorrected form is coname(f) followed by name(f) : A & B* -> A* & B.
Diagram projector_of(const Diagram& f, bool corrected);

/// I -> T & T*, nested caps.
Diagram cap_pair(const WireType& t);
/// T & T* -> I, nested cups.
Diagram cup_pair(const WireType& t);

enum class TraceMode : std::uint8_t { full, partial };

/// Closes wires of `d` into loops. `partial` traces the trailing `count`
/// wires, which must agree between dom and cod; `full` closes every wire
/// and yields a scalar diagram.
Diagram trace_shape(const Diagram& d, TraceMode mode, std::size_t count = 0);

/// Compositionality shapes for f : A -> B, g : B -> C (single wires).
/// compositional_costate: coname(f) applied across name(g), A -> C, equal to g . f.
/// compositional_state: coname(g) applied across name(f), C* -> A*, equal to
/// the transpose of g . f.
Diagram compositional_costate(const Diagram& f, const Diagram& g);
Diagram compositional_state(const Diagram& f, const Diagram& g);

/// Id(t) & d, dropping the identity when t is the unit.
Diagram pad_left(const WireType& t, const Diagram& d);
/// d & Id(t), dropping the identity when t is the unit.
Diagram pad_right(const Diagram& d, const WireType& t);

}  // namespace kqm
