#include "kqm/sliced.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kqm/builders.hpp"

namespace kqm {

namespace {

void collect(const Diagram& d, std::size_t base, std::vector<Slice>& out) {
  switch (d.kind()) {
    case Kind::id: return;
    case Kind::seq:
      collect(d.first(), base, out);
      collect(d.second(), base, out);
      return;
    case Kind::par:
      collect(d.first(), base, out);
      collect(d.second(), base + d.first().cod().size(), out);
      return;
    default: out.push_back(Slice{base, d}); return;
  }
}

WireType apply_slice(const WireType& frontier, const Slice& s) {
  if (s.offset + s.in() > frontier.size() || frontier.slice(s.offset, s.in()) != s.box.dom()) {
    throw TypeError("slice at offset " + std::to_string(s.offset) + " expects " + s.box.dom().str() +
                    " inside " + frontier.str());
  }
  return frontier.slice(0, s.offset)
      .tensor(s.box.cod())
      .tensor(frontier.slice(s.offset + s.in(), frontier.size() - s.offset - s.in()));
}

}  // namespace

Sliced Sliced::from_term(const Diagram& d) {
  Sliced out{d.dom(), {}};
  collect(d, 0, out.slices);
  return out;
}

WireType Sliced::cod() const {
  WireType frontier = dom;
  for (const auto& s : slices) frontier = apply_slice(frontier, s);
  return frontier;
}

Diagram Sliced::to_term() const {
  if (slices.empty()) return Diagram::id(dom);
  WireType frontier = dom;
  std::vector<Diagram> layers;
  layers.reserve(slices.size());
  for (const auto& s : slices) {
    const WireType left = frontier.slice(0, s.offset);
    const WireType right = frontier.slice(s.offset + s.in(), frontier.size() - s.offset - s.in());
    layers.push_back(pad_right(pad_left(left, s.box), right));
    frontier = apply_slice(frontier, s);
  }
  return seq_all(layers);
}

Layered Layered::from_term(const Diagram& d) {
  Layered out{{}, Sliced{WireType::unit(), {}}};
  Diagram rest = d;
  while (rest.kind() == Kind::par && rest.first().is_scalar_typed()) {
    out.scalars.push_back(Sliced::from_term(rest.first()));
    rest = rest.second();
  }
  if (rest.is_scalar_typed() && !out.scalars.empty()) {
    out.scalars.push_back(Sliced::from_term(rest));
    return out;
  }
  out.body = Sliced::from_term(rest);
  return out;
}

Diagram Layered::to_term() const {
  const bool trivial_body = body.dom.is_unit() && body.slices.empty();
  if (scalars.empty()) return body.to_term();
  std::size_t n = scalars.size();
  Diagram out = trivial_body ? scalars[n - 1].to_term() : par(scalars[n - 1].to_term(), body.to_term());
  for (std::size_t i = n - 1; i-- > 0;) out = par(scalars[i].to_term(), out);
  return out;
}

bool commutes(const Slice& s1, const Slice& s2) {
  return s2.offset + s2.in() <= s1.offset || s2.offset >= s1.offset + s1.out();
}

void swap_adjacent(std::vector<Slice>& slices, std::size_t i) {
  Slice s1 = slices[i];
  Slice s2 = slices[i + 1];
  if (s2.offset + s2.in() <= s1.offset) {
    s1.offset = s1.offset + s2.out() - s2.in();
  } else if (s2.offset >= s1.offset + s1.out()) {
    s2.offset = s2.offset + s1.in() - s1.out();
  } else {
    throw std::logic_error("swap_adjacent on overlapping slices");
  }
  slices[i] = std::move(s2);
  slices[i + 1] = std::move(s1);
}

void left_normalize(std::vector<Slice>& slices) {
  const std::size_t limit = 4 * (slices.size() + 1) * (slices.size() + 1);
  for (std::size_t pass = 0; pass < limit; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < slices.size(); ++i) {
      const Slice& s1 = slices[i];
      const Slice& s2 = slices[i + 1];
      if (s2.offset + s2.in() > s1.offset) continue;
      // s2 sits both left and right of s1: keep the order.
      const bool ambiguous = s2.in() == 0 && s1.out() == 0 && s2.offset == s1.offset;
      if (ambiguous) continue;
      swap_adjacent(slices, i);
      changed = true;
    }
    if (!changed) return;
  }
  throw std::logic_error("left_normalize did not converge");
}

WireGraph WireGraph::build(const Sliced& s) {
  WireGraph g;
  std::vector<std::size_t> frontier;
  for (std::size_t i = 0; i < s.dom.size(); ++i) {
    frontier.push_back(g.wires.size());
    g.wires.push_back({});
  }
  g.boundary_in = frontier;
  for (std::size_t t = 0; t < s.slices.size(); ++t) {
    const Slice& sl = s.slices[t];
    g.frontier_before.push_back(frontier);
    std::vector<std::size_t> ins(frontier.begin() + static_cast<std::ptrdiff_t>(sl.offset),
                                 frontier.begin() + static_cast<std::ptrdiff_t>(sl.offset + sl.in()));
    for (std::size_t p = 0; p < ins.size(); ++p) g.wires[ins[p]].consumer = {static_cast<int>(t), p};
    std::vector<std::size_t> outs;
    for (std::size_t p = 0; p < sl.out(); ++p) {
      outs.push_back(g.wires.size());
      g.wires.push_back({{static_cast<int>(t), p}, {}});
    }
    frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(sl.offset),
                   frontier.begin() + static_cast<std::ptrdiff_t>(sl.offset + sl.in()));
    frontier.insert(frontier.begin() + static_cast<std::ptrdiff_t>(sl.offset), outs.begin(), outs.end());
    g.inputs.push_back(std::move(ins));
    g.outputs.push_back(std::move(outs));
  }
  g.boundary_out = frontier;
  return g;
}

std::vector<std::vector<std::size_t>> closed_components(const Sliced& s) {
  const WireGraph g = WireGraph::build(s);
  const std::size_t n = s.slices.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> touches_boundary(n, false);
  for (const auto& w : g.wires) {
    const int p = w.producer.slice;
    const int c = w.consumer.slice;
    if (p >= 0 && c >= 0) {
      parent[find(static_cast<std::size_t>(p))] = find(static_cast<std::size_t>(c));
    } else if (p >= 0) {
      touches_boundary[static_cast<std::size_t>(p)] = true;
    } else if (c >= 0) {
      touches_boundary[static_cast<std::size_t>(c)] = true;
    }
  }
  std::vector<bool> open_root(n, false);
  for (std::size_t i = 0; i < n; ++i)
    if (touches_boundary[i]) open_root[find(i)] = true;
  std::vector<std::vector<std::size_t>> comps;
  std::vector<int> comp_of_root(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (open_root[r]) continue;
    if (comp_of_root[r] < 0) {
      comp_of_root[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[static_cast<std::size_t>(comp_of_root[r])].push_back(i);
  }
  return comps;
}

Sliced restrict_to(const Sliced& s, const std::vector<std::size_t>& subset, const WireType& sub_dom) {
  const WireGraph g = WireGraph::build(s);
  std::vector<bool> in_subset(s.slices.size(), false);
  for (auto i : subset) in_subset[i] = true;
  std::vector<bool> member(g.wires.size(), false);
  for (std::size_t w = 0; w < g.wires.size(); ++w) {
    const auto& info = g.wires[w];
    const bool from_subset = info.producer.slice >= 0 && in_subset[static_cast<std::size_t>(info.producer.slice)];
    const bool to_subset = info.consumer.slice >= 0 && in_subset[static_cast<std::size_t>(info.consumer.slice)];
    const bool pass_through = info.producer.slice < 0 && info.consumer.slice < 0;
    member[w] = from_subset || to_subset || (pass_through && !sub_dom.is_unit());
  }
  Sliced out{sub_dom, {}};
  for (std::size_t t = 0; t < s.slices.size(); ++t) {
    if (!in_subset[t]) continue;
    const auto& frontier = g.frontier_before[t];
    std::size_t offset = 0;
    for (std::size_t p = 0; p < s.slices[t].offset; ++p)
      if (member[frontier[p]]) ++offset;
    out.slices.push_back(Slice{offset, s.slices[t].box});
  }
  return out;
}

bool is_slidable(const Diagram& box) {
  return box.kind() == Kind::gen && box.dom().size() == 1 && box.cod().size() == 1;
}

std::optional<std::size_t> bring_after(std::vector<Slice>& slices, std::size_t anchor, std::size_t target) {
  std::vector<Slice> work = slices;
  std::size_t anchor_pos = anchor;
  for (std::size_t cur = anchor + 1; cur < target; ++cur) {
    std::vector<Slice> attempt = work;
    bool ok = true;
    for (std::size_t t = cur; t > anchor_pos; --t) {
      if (!commutes(attempt[t - 1], attempt[t])) {
        ok = false;
        break;
      }
      swap_adjacent(attempt, t - 1);
    }
    if (ok) {
      work = std::move(attempt);
      ++anchor_pos;
    }
  }
  for (std::size_t t = target; t > anchor_pos + 1; --t) {
    if (!commutes(work[t - 1], work[t])) return std::nullopt;
    swap_adjacent(work, t - 1);
  }
  slices = std::move(work);
  return anchor_pos;
}

std::optional<std::size_t> bring_before(std::vector<Slice>& slices, std::size_t anchor, std::size_t target) {
  std::vector<Slice> work = slices;
  std::size_t anchor_pos = anchor;
  for (std::size_t cur = anchor; cur-- > target + 1;) {
    std::vector<Slice> attempt = work;
    bool ok = true;
    for (std::size_t t = cur; t < anchor_pos; ++t) {
      if (!commutes(attempt[t], attempt[t + 1])) {
        ok = false;
        break;
      }
      swap_adjacent(attempt, t);
    }
    if (ok) {
      work = std::move(attempt);
      --anchor_pos;
    }
  }
  for (std::size_t t = target; t + 1 < anchor_pos; ++t) {
    if (!commutes(work[t], work[t + 1])) return std::nullopt;
    swap_adjacent(work, t);
  }
  slices = std::move(work);
  return anchor_pos;
}

namespace {

void render(const Diagram& d, std::ostream& out) {
  switch (d.kind()) {
    case Kind::gen: {
      const auto& s = d.sig();
      out << s.name << '<' << s.dom_plain.str() << '>' << s.cod_plain.str() << '>' << to_string(s.variant);
      return;
    }
    case Kind::id: out << "id[" << d.type().str() << ']'; return;
    case Kind::swap: out << "swap[" << d.left().str() << ',' << d.right().str() << ']'; return;
    case Kind::cap: out << "cap[" << d.wire().str() << ']'; return;
    case Kind::cup: out << "cup[" << d.wire().str() << ']'; return;
    case Kind::scalar: out << "scalar[" << d.value().real() << ',' << d.value().imag() << ']'; return;
    case Kind::seq:
    case Kind::par:
      out << '(';
      render(d.first(), out);
      out << (d.kind() == Kind::seq ? " ; " : " * ");
      render(d.second(), out);
      out << ')';
      return;
    case Kind::variant:
      out << to_string(d.variant()) << '(';
      render(d.body(), out);
      out << ')';
      return;
  }
}

}  // namespace

std::string debug_string(const Diagram& d) {
  std::ostringstream out;
  out.precision(17);
  render(d, out);
  return out.str();
}

}  // namespace kqm
