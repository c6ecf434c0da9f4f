#include "kqm/diagram.hpp"

#include <stdexcept>

namespace kqm {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::plain: return "plain";
    case Variant::transpose: return "transpose";
    case Variant::conjugate: return "conj";
    case Variant::dagger: return "dagger";
  }
  return "?";
}

WireType variant_dom(Variant v, const WireType& dom, const WireType& cod) {
  switch (v) {
    case Variant::plain: return dom;
    case Variant::dagger: return cod;
    case Variant::transpose: return cod.dual();
    case Variant::conjugate: return dom.dual();
  }
  return dom;
}

WireType variant_cod(Variant v, const WireType& dom, const WireType& cod) {
  switch (v) {
    case Variant::plain: return cod;
    case Variant::dagger: return dom;
    case Variant::transpose: return dom.dual();
    case Variant::conjugate: return cod.dual();
  }
  return cod;
}

WireType GeneratorSig::dom() const { return variant_dom(variant, dom_plain, cod_plain); }
WireType GeneratorSig::cod() const { return variant_cod(variant, dom_plain, cod_plain); }

struct Diagram::Node {
  Kind kind;
  WireType dom;
  WireType cod;
  GeneratorSig sig;     // gen
  WireType a;           // id type, swap left
  WireType b;           // swap right
  Wire wire;            // cap, cup
  Complex value{};      // scalar
  Variant variant = Variant::plain;
  std::vector<Diagram> kids;  // seq/par operands, variant body
  std::size_t size = 1;
};

namespace {

using NodePtr = std::shared_ptr<const Diagram::Node>;

bool nodes_equal(const Diagram::Node& a, const Diagram::Node& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.size != b.size) return false;
  switch (a.kind) {
    case Kind::gen: return a.sig == b.sig;
    case Kind::id: return a.a == b.a;
    case Kind::swap: return a.a == b.a && a.b == b.b;
    case Kind::cap:
    case Kind::cup: return a.wire == b.wire;
    case Kind::scalar: return a.value == b.value;
    case Kind::seq:
    case Kind::par: return a.kids[0] == b.kids[0] && a.kids[1] == b.kids[1];
    case Kind::variant: return a.variant == b.variant && a.kids[0] == b.kids[0];
  }
  return false;
}

}  // namespace

Diagram Diagram::gen(GeneratorSig sig) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::gen;
  n->dom = sig.dom();
  n->cod = sig.cod();
  n->sig = std::move(sig);
  return Diagram(std::move(n));
}

Diagram Diagram::id(WireType type) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::id;
  n->dom = type;
  n->cod = type;
  n->a = std::move(type);
  return Diagram(std::move(n));
}

Diagram Diagram::swap(WireType left, WireType right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::swap;
  n->dom = left.tensor(right);
  n->cod = right.tensor(left);
  n->a = std::move(left);
  n->b = std::move(right);
  return Diagram(std::move(n));
}

Diagram Diagram::cap(Wire w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::cap;
  n->cod = WireType{w.dualized(), w};
  n->wire = std::move(w);
  return Diagram(std::move(n));
}

Diagram Diagram::cup(Wire w) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::cup;
  n->dom = WireType{w.dualized(), w};
  n->wire = std::move(w);
  return Diagram(std::move(n));
}

Diagram Diagram::scalar(Complex value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::scalar;
  n->value = value;
  return Diagram(std::move(n));
}

Kind Diagram::kind() const { return node_->kind; }
const WireType& Diagram::dom() const { return node_->dom; }
const WireType& Diagram::cod() const { return node_->cod; }

bool Diagram::is_leaf() const {
  switch (node_->kind) {
    case Kind::seq:
    case Kind::par:
    case Kind::variant: return false;
    default: return true;
  }
}

const GeneratorSig& Diagram::sig() const { return node_->sig; }
const WireType& Diagram::type() const { return node_->a; }
const WireType& Diagram::left() const { return node_->a; }
const WireType& Diagram::right() const { return node_->b; }
const Wire& Diagram::wire() const { return node_->wire; }
Complex Diagram::value() const { return node_->value; }
Variant Diagram::variant() const { return node_->variant; }

const Diagram& Diagram::first() const { return node_->kids.at(0); }
const Diagram& Diagram::second() const { return node_->kids.at(1); }
const Diagram& Diagram::body() const { return first(); }

std::size_t Diagram::size() const { return node_->size; }

bool operator==(const Diagram& a, const Diagram& b) { return nodes_equal(*a.node_, *b.node_); }

Diagram seq(const Diagram& d1, const Diagram& d2) {
  if (d1.cod() != d2.dom()) {
    throw TypeError("sequential composition mismatch: codomain " + d1.cod().str() +
                    " does not match domain " + d2.dom().str());
  }
  auto n = std::make_shared<Diagram::Node>();
  n->kind = Kind::seq;
  n->dom = d1.dom();
  n->cod = d2.cod();
  n->kids = {d1, d2};
  n->size = 1 + d1.size() + d2.size();
  return Diagram(std::move(n));
}

Diagram par(const Diagram& d1, const Diagram& d2) {
  auto n = std::make_shared<Diagram::Node>();
  n->kind = Kind::par;
  n->dom = d1.dom().tensor(d2.dom());
  n->cod = d1.cod().tensor(d2.cod());
  n->kids = {d1, d2};
  n->size = 1 + d1.size() + d2.size();
  return Diagram(std::move(n));
}

Diagram seq_all(const std::vector<Diagram>& ds) {
  if (ds.empty()) throw std::invalid_argument("seq_all of an empty list");
  Diagram out = ds.front();
  for (std::size_t i = 1; i < ds.size(); ++i) out = seq(out, ds[i]);
  return out;
}

Diagram par_all(const std::vector<Diagram>& ds) {
  if (ds.empty()) return Diagram::id(WireType::unit());
  Diagram out = ds.front();
  for (std::size_t i = 1; i < ds.size(); ++i) out = par(out, ds[i]);
  return out;
}

Diagram compose(Mode mode, const Diagram& d1, const Diagram& d2) {
  return mode == Mode::seq ? seq(d1, d2) : par(d1, d2);
}

Diagram build_primitive(Primitive kind, const std::vector<WireType>& args) {
  auto expect_args = [&](std::size_t n, const char* what) {
    if (args.size() != n) {
      throw TypeError(std::string(what) + " expects " + std::to_string(n) + " wire type argument(s)");
    }
  };
  auto single_wire = [&](const char* what) -> const Wire& {
    expect_args(1, what);
    if (args[0].size() != 1) {
      throw TypeError(std::string(what) + " needs a single base wire, got " + args[0].str());
    }
    return args[0][0];
  };
  switch (kind) {
    case Primitive::id: expect_args(1, "id"); return Diagram::id(args[0]);
    case Primitive::cap: return Diagram::cap(single_wire("cap"));
    case Primitive::cup: return Diagram::cup(single_wire("cup"));
    case Primitive::swap: expect_args(2, "swap"); return Diagram::swap(args[0], args[1]);
  }
  throw TypeError("unknown primitive");
}

namespace {

Diagram variant_of_leaf(const Diagram& d, Variant v) {
  switch (d.kind()) {
    case Kind::gen: return Diagram::gen(d.sig().with(v));
    case Kind::id: return v == Variant::dagger ? d : Diagram::id(d.type().dual());
    case Kind::swap:
      switch (v) {
        case Variant::dagger: return Diagram::swap(d.right(), d.left());
        case Variant::transpose: return Diagram::swap(d.left().dual(), d.right().dual());
        case Variant::conjugate: return Diagram::swap(d.right().dual(), d.left().dual());
        case Variant::plain: return d;
      }
      break;
    case Kind::cap: return conjugates(v) && !transposes(v) ? d : Diagram::cup(d.wire());
    case Kind::cup: return conjugates(v) && !transposes(v) ? d : Diagram::cap(d.wire());
    case Kind::scalar: return conjugates(v) ? Diagram::scalar(std::conj(d.value())) : d;
    default: break;
  }
  throw std::logic_error("variant_of_leaf on a composite");
}

}  // namespace

Diagram apply_variant(const Diagram& d, Variant v) {
  if (v == Variant::plain) {
    if (d.kind() == Kind::variant) return apply_variant(d.body(), d.variant());
    if (d.kind() == Kind::seq) return seq(apply_variant(d.first(), v), apply_variant(d.second(), v));
    if (d.kind() == Kind::par) return par(apply_variant(d.first(), v), apply_variant(d.second(), v));
    return d;
  }
  switch (d.kind()) {
    case Kind::seq: {
      Diagram a = apply_variant(d.first(), v);
      Diagram b = apply_variant(d.second(), v);
      return transposes(v) ? seq(b, a) : seq(a, b);
    }
    case Kind::par: {
      Diagram a = apply_variant(d.first(), v);
      Diagram b = apply_variant(d.second(), v);
      // Dualizing reverses wire order, so transposition and conjugation
      // mirror parallel composites.
      return v == Variant::dagger ? par(a, b) : par(b, a);
    }
    case Kind::variant: return apply_variant(d.body(), compose(v, d.variant()));
    default: return variant_of_leaf(d, v);
  }
}

Diagram lazy_variant(Variant v, const Diagram& d) {
  if (d.kind() == Kind::variant) {
    Variant merged = compose(v, d.variant());
    return merged == Variant::plain ? d.body() : lazy_variant(merged, d.body());
  }
  if (v == Variant::plain) return d;
  if (d.is_leaf()) return variant_of_leaf(d, v);
  auto n = std::make_shared<Diagram::Node>();
  n->kind = Kind::variant;
  n->dom = variant_dom(v, d.dom(), d.cod());
  n->cod = variant_cod(v, d.dom(), d.cod());
  n->variant = v;
  n->kids = {d};
  n->size = 1 + d.size();
  return Diagram(std::move(n));
}

}  // namespace kqm
