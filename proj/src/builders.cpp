#include "kqm/builders.hpp"

namespace kqm {

namespace {

void require_single_wires(const Diagram& f, const char* what) {
  if (f.dom().size() != 1 || f.cod().size() != 1) {
    throw TypeError(std::string(what) + " needs a single-wire map, got " + f.dom().str() + " -> " +
                    f.cod().str());
  }
}

bool is_identity(const Diagram& f) { return f.kind() == Kind::id; }

}  // namespace

Diagram pad_left(const WireType& t, const Diagram& d) {
  return t.is_unit() ? d : par(Diagram::id(t), d);
}

Diagram pad_right(const Diagram& d, const WireType& t) {
  return t.is_unit() ? d : par(d, Diagram::id(t));
}

Diagram bipartite_of(const Diagram& f, Side side) {
  require_single_wires(f, side == Side::state ? "name" : "coname");
  const Wire a = f.dom()[0];
  const Wire b = f.cod()[0];
  if (side == Side::state) {
    if (is_identity(f)) return Diagram::cap(a);
    return seq(Diagram::cap(a), par(Diagram::id(WireType{a.dualized()}), f));
  }
  if (is_identity(f)) return Diagram::cup(b.dualized());
  return seq(par(f, Diagram::id(WireType{b.dualized()})), Diagram::cup(b.dualized()));
}

Diagram unname(const Diagram& state) {
  if (!state.dom().is_unit() || state.cod().size() != 2) {
    throw TypeError("unname needs a bipartite state I -> A* & B, got " + state.dom().str() + " -> " +
                    state.cod().str());
  }
  const Wire a_dual = state.cod()[0];
  const Wire a = a_dual.dualized();
  const WireType b{state.cod()[1]};
  return seq(par(Diagram::id(WireType{a}), state), par(Diagram::cup(a_dual), Diagram::id(b)));
}

Diagram projector_of(const Diagram& f, bool corrected) {
  require_single_wires(f, "projector");
  if (!corrected) return seq(coname(f), name(f));
  const Wire b = f.cod()[0];
  Diagram bra = is_identity(f)
                    ? Diagram::cup(b)
                    : seq(par(apply_variant(f, Variant::conjugate), Diagram::id(WireType{b})), Diagram::cup(b));
  return seq(bra, name(f));
}

Diagram cap_pair(const WireType& t) {
  if (t.is_unit()) return Diagram::id(WireType::unit());
  Diagram out = Diagram::cap(t[0].dualized());
  for (std::size_t i = 1; i < t.size(); ++i) {
    const WireType outer = t.slice(0, i);
    out = seq(out, pad_right(pad_left(outer, Diagram::cap(t[i].dualized())), outer.dual()));
  }
  return out;
}

Diagram cup_pair(const WireType& t) {
  if (t.is_unit()) return Diagram::id(WireType::unit());
  Diagram out = Diagram::id(t.tensor(t.dual()));
  bool first = true;
  for (std::size_t i = t.size(); i-- > 0;) {
    const WireType outer = t.slice(0, i);
    Diagram layer = pad_right(pad_left(outer, Diagram::cup(t[i].dualized())), outer.dual());
    out = first ? layer : seq(out, layer);
    first = false;
  }
  return out;
}

Diagram trace_shape(const Diagram& d, TraceMode mode, std::size_t count) {
  if (mode == TraceMode::full) {
    if (d.dom() != d.cod()) {
      throw TypeError("full trace needs matching boundaries, got " + d.dom().str() + " -> " + d.cod().str());
    }
    count = d.dom().size();
  }
  if (count > d.dom().size() || count > d.cod().size()) {
    throw TypeError("trace selects " + std::to_string(count) + " wires of " + d.dom().str() + " -> " +
                    d.cod().str());
  }
  const WireType traced_in = d.dom().slice(d.dom().size() - count, count);
  const WireType traced_out = d.cod().slice(d.cod().size() - count, count);
  if (traced_in != traced_out) {
    throw TypeError("traced wires disagree: input " + traced_in.str() + " vs output " + traced_out.str());
  }
  const WireType kept_in = d.dom().slice(0, d.dom().size() - count);
  const WireType kept_out = d.cod().slice(0, d.cod().size() - count);
  if (count == 0) return d;
  return seq(seq(pad_left(kept_in, cap_pair(traced_in)), pad_right(d, traced_in.dual())),
             pad_left(kept_out, cup_pair(traced_in)));
}

Diagram compositional_costate(const Diagram& f, const Diagram& g) {
  require_single_wires(f, "compositional_costate");
  require_single_wires(g, "compositional_costate");
  if (f.cod() != g.dom()) throw TypeError("compositional_costate: " + f.cod().str() + " vs " + g.dom().str());
  return seq(par(Diagram::id(f.dom()), name(g)), par(coname(f), Diagram::id(g.cod())));
}

Diagram compositional_state(const Diagram& f, const Diagram& g) {
  require_single_wires(f, "compositional_state");
  require_single_wires(g, "compositional_state");
  if (f.cod() != g.dom()) throw TypeError("compositional_state: " + f.cod().str() + " vs " + g.dom().str());
  return seq(par(name(f), Diagram::id(g.cod().dual())), par(Diagram::id(f.dom().dual()), coname(g)));
}

}  // namespace kqm
