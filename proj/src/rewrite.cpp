#include "kqm/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "kqm/sliced.hpp"

namespace kqm {

namespace {

// ---------------------------------------------------------------------------
// Tree-level helpers for unpushed variants.

using Path = std::vector<std::size_t>;

bool contains_variant(const Diagram& d) {
  switch (d.kind()) {
    case Kind::variant: return true;
    case Kind::seq:
    case Kind::par: return contains_variant(d.first()) || contains_variant(d.second());
    default: return false;
  }
}

std::optional<Path> innermost_variant(const Diagram& d) {
  switch (d.kind()) {
    case Kind::seq:
    case Kind::par:
      for (std::size_t i = 0; i < 2; ++i) {
        const Diagram& child = i == 0 ? d.first() : d.second();
        if (auto p = innermost_variant(child)) {
          p->insert(p->begin(), i);
          return p;
        }
      }
      return std::nullopt;
    case Kind::variant:
      if (auto p = innermost_variant(d.body())) {
        p->insert(p->begin(), 0);
        return p;
      }
      return Path{};
    default: return std::nullopt;
  }
}

const Diagram* node_at(const Diagram& d, const Path& path, std::size_t depth = 0) {
  if (depth == path.size()) return &d;
  const std::size_t i = path[depth];
  switch (d.kind()) {
    case Kind::seq:
    case Kind::par:
      if (i > 1) return nullptr;
      return node_at(i == 0 ? d.first() : d.second(), path, depth + 1);
    case Kind::variant:
      if (i != 0) return nullptr;
      return node_at(d.body(), path, depth + 1);
    default: return nullptr;
  }
}

Diagram replace_at(const Diagram& d, const Path& path, const Diagram& replacement, std::size_t depth = 0) {
  if (depth == path.size()) return replacement;
  const std::size_t i = path[depth];
  switch (d.kind()) {
    case Kind::seq:
    case Kind::par: {
      Diagram a = i == 0 ? replace_at(d.first(), path, replacement, depth + 1) : d.first();
      Diagram b = i == 1 ? replace_at(d.second(), path, replacement, depth + 1) : d.second();
      return d.kind() == Kind::seq ? seq(a, b) : par(a, b);
    }
    case Kind::variant: return lazy_variant(d.variant(), replace_at(d.body(), path, replacement, depth + 1));
    default: throw std::logic_error("replace_at: path runs through a leaf");
  }
}

Diagram distribute(const Diagram& node) {
  const Variant v = node.variant();
  const Diagram& body = node.body();
  Diagram a = lazy_variant(v, body.first());
  Diagram b = lazy_variant(v, body.second());
  if (body.kind() == Kind::seq) return transposes(v) ? seq(b, a) : seq(a, b);
  return v == Variant::dagger ? par(a, b) : par(b, a);
}

std::string path_to_string(const Path& path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t k = 0; k < path.size(); ++k) {
    if (k) out += '.';
    out += std::to_string(path[k]);
  }
  return out;
}

std::optional<Path> path_from_string(const std::string& s) {
  if (s == "root") return Path{};
  Path out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, '.')) {
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    out.push_back(std::stoul(part));
  }
  return out;
}

std::size_t variant_weight(const Diagram& d) {
  switch (d.kind()) {
    case Kind::seq:
    case Kind::par: return variant_weight(d.first()) + variant_weight(d.second());
    case Kind::variant: return d.body().size() + variant_weight(d.body());
    default: return 0;
  }
}

std::size_t cap_cup_count(const Diagram& d) {
  switch (d.kind()) {
    case Kind::cap:
    case Kind::cup: return 1;
    case Kind::seq:
    case Kind::par: return cap_cup_count(d.first()) + cap_cup_count(d.second());
    case Kind::variant: return cap_cup_count(d.body());
    default: return 0;
  }
}

// ---------------------------------------------------------------------------
// Sliced-level helpers.

Layered layered_normal(Layered l) {
  left_normalize(l.body.slices);
  for (auto& s : l.scalars) left_normalize(s.slices);
  return l;
}

bool is_layered(const Diagram& d) { return layered_normal(Layered::from_term(d)).to_term() == d; }

std::vector<std::size_t> complement_of(std::size_t n, const std::vector<std::size_t>& subset) {
  std::vector<bool> taken(n, false);
  for (auto i : subset) taken[i] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) out.push_back(i);
  return out;
}

bool floatable(const Sliced& body, std::size_t component_count) {
  const bool scalar_body = body.dom.is_unit() && body.cod().is_unit();
  return scalar_body ? component_count >= 2 : component_count >= 1;
}

std::size_t unfloated_components(const Sliced& body) {
  const std::size_t n = closed_components(body).size();
  const bool scalar_body = body.dom.is_unit() && body.cod().is_unit();
  if (scalar_body) return n == 0 ? 0 : n - 1;
  return n;
}

// Longest sequence of slide moves available to a box sitting between
// `producer` and `consumer`, looking through other slidable boxes.
class SlidePotential {
 public:
  explicit SlidePotential(const Sliced& s) : s_(s), g_(WireGraph::build(s)) {
    for (const auto& sl : s.slices)
      if (sl.box.kind() == Kind::cap || sl.box.kind() == Kind::cup) ++turns_;
  }

  std::size_t total() const {
    std::size_t sum = 0;
    for (std::size_t t = 0; t < s_.slices.size(); ++t) {
      if (!is_slidable(s_.slices[t].box)) continue;
      sum += longest(upstream(g_.inputs[t][0]), downstream(g_.outputs[t][0]), 0);
    }
    return sum;
  }

 private:
  using End = WireGraph::End;

  bool slidable_at(int slice) const {
    return slice >= 0 && is_slidable(s_.slices[static_cast<std::size_t>(slice)].box);
  }
  Kind kind_at(int slice) const { return s_.slices[static_cast<std::size_t>(slice)].box.kind(); }

  End upstream(std::size_t wire) const {
    std::size_t guard = 0;
    while (slidable_at(g_.wires[wire].producer.slice) && guard++ <= s_.slices.size())
      wire = g_.inputs[static_cast<std::size_t>(g_.wires[wire].producer.slice)][0];
    return g_.wires[wire].producer;
  }
  End downstream(std::size_t wire) const {
    std::size_t guard = 0;
    while (slidable_at(g_.wires[wire].consumer.slice) && guard++ <= s_.slices.size())
      wire = g_.outputs[static_cast<std::size_t>(g_.wires[wire].consumer.slice)][0];
    return g_.wires[wire].consumer;
  }

  std::size_t longest(End producer, End consumer, std::size_t depth) const {
    if (depth > turns_) return 0;
    std::size_t best = 0;
    if (producer.slice >= 0 && kind_at(producer.slice) == Kind::cap && producer.port == 0) {
      const auto cap = static_cast<std::size_t>(producer.slice);
      best = std::max(best, 1 + longest(End{producer.slice, 1}, downstream(g_.outputs[cap][1]), depth + 1));
    }
    if (consumer.slice >= 0 && kind_at(consumer.slice) == Kind::cup && consumer.port == 0) {
      const auto cup = static_cast<std::size_t>(consumer.slice);
      best = std::max(best, 1 + longest(upstream(g_.inputs[cup][1]), End{consumer.slice, 1}, depth + 1));
    }
    return best;
  }

  const Sliced& s_;
  WireGraph g_;
  std::size_t turns_ = 0;
};

// A region is the body or one floated scalar component.
struct Region {
  bool is_body = true;
  std::size_t scalar_index = 0;
};

std::string region_prefix(const Region& r) {
  return r.is_body ? std::string("body") : "scalar " + std::to_string(r.scalar_index);
}

Sliced& region_of(Layered& l, const Region& r) { return r.is_body ? l.body : l.scalars[r.scalar_index]; }

std::vector<Region> regions_of(const Layered& l) {
  std::vector<Region> out;
  for (std::size_t i = 0; i < l.scalars.size(); ++i) out.push_back(Region{false, i});
  out.push_back(Region{true, 0});
  return out;
}

struct PairPosition {
  Region region;
  std::size_t first = 0;
  std::size_t second = 0;
};

std::string pair_position_string(const PairPosition& p) {
  return region_prefix(p.region) + " slices " + std::to_string(p.first) + "," + std::to_string(p.second);
}

std::optional<PairPosition> parse_pair_position(const std::string& s) {
  std::istringstream in(s);
  std::string word;
  PairPosition p;
  if (!(in >> word)) return std::nullopt;
  if (word == "scalar") {
    p.region.is_body = false;
    if (!(in >> p.region.scalar_index)) return std::nullopt;
  } else if (word != "body") {
    return std::nullopt;
  }
  std::string keyword;
  char comma = 0;
  if (!(in >> keyword >> p.first >> comma >> p.second) || keyword != "slices" || comma != ',') return std::nullopt;
  return p;
}

Diagram rebuild(const Layered& l) {
  Layered out = l;
  return out.to_term();
}

using PairRewrite = std::function<bool(std::vector<Slice>&, std::size_t, std::size_t)>;

// Yank the cap at `i` against the cup at `j`.
bool yank_at(std::vector<Slice>& slices, std::size_t i, std::size_t j) {
  if (i >= j || j >= slices.size()) return false;
  if (slices[i].box.kind() != Kind::cap || slices[j].box.kind() != Kind::cup) return false;
  std::vector<Slice> work = slices;
  const auto anchor = bring_after(work, i, j);
  if (!anchor) return false;
  const std::size_t p = *anchor;
  const std::size_t k = work[p].offset;
  const std::size_t cup_offset = work[p + 1].offset;
  if (cup_offset + 1 != k && cup_offset != k + 1) return false;
  work.erase(work.begin() + static_cast<std::ptrdiff_t>(p), work.begin() + static_cast<std::ptrdiff_t>(p + 2));
  slices = std::move(work);
  return true;
}

bool slide_cap_at(std::vector<Slice>& slices, std::size_t i, std::size_t j) {
  if (i >= j || j >= slices.size()) return false;
  if (slices[i].box.kind() != Kind::cap || !is_slidable(slices[j].box)) return false;
  std::vector<Slice> work = slices;
  const auto anchor = bring_after(work, i, j);
  if (!anchor) return false;
  const std::size_t p = *anchor;
  const std::size_t k = work[p].offset;
  if (work[p + 1].offset != k) return false;
  const Diagram box = work[p + 1].box;
  work[p] = Slice{k, Diagram::cap(box.cod()[0].dualized())};
  work[p + 1] = Slice{k + 1, apply_variant(box, Variant::transpose)};
  slices = std::move(work);
  return true;
}

bool slide_cup_at(std::vector<Slice>& slices, std::size_t i, std::size_t j) {
  if (i >= j || j >= slices.size()) return false;
  if (!is_slidable(slices[i].box) || slices[j].box.kind() != Kind::cup) return false;
  std::vector<Slice> work = slices;
  const auto anchor = bring_before(work, j, i);
  if (!anchor) return false;
  const std::size_t q = *anchor;
  const std::size_t o = work[q - 1].offset;
  if (work[q].offset != o) return false;
  const Diagram box = work[q - 1].box;
  work[q - 1] = Slice{o + 1, apply_variant(box, Variant::transpose)};
  work[q] = Slice{o, Diagram::cup(box.dom()[0].dualized())};
  slices = std::move(work);
  return true;
}

// Candidate (i, j) pairs per rule, in leftmost order.
std::vector<std::pair<std::size_t, std::size_t>> candidates(const std::string& rule, const Sliced& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const WireGraph g = WireGraph::build(s);
  const auto& sl = s.slices;
  for (std::size_t i = 0; i < sl.size(); ++i) {
    for (std::size_t j = i + 1; j < sl.size(); ++j) {
      if (rule == "yank") {
        if (sl[i].box.kind() != Kind::cap || sl[j].box.kind() != Kind::cup) continue;
        const auto u = g.outputs[i][0];
        const auto v = g.outputs[i][1];
        const auto a = g.inputs[j][0];
        const auto b = g.inputs[j][1];
        if ((b == u && a != v) || (a == v && b != u)) out.emplace_back(i, j);
      } else if (rule == "slide-cap") {
        if (sl[i].box.kind() == Kind::cap && is_slidable(sl[j].box) && g.inputs[j][0] == g.outputs[i][0])
          out.emplace_back(i, j);
      } else if (rule == "slide-cup") {
        if (is_slidable(sl[i].box) && sl[j].box.kind() == Kind::cup && g.outputs[i][0] == g.inputs[j][0])
          out.emplace_back(i, j);
      }
    }
  }
  return out;
}

PairRewrite pair_rewrite_for(const std::string& rule) {
  if (rule == "yank") return yank_at;
  if (rule == "slide-cap") return slide_cap_at;
  return slide_cup_at;
}

std::optional<Diagram> try_pair_rule(const Diagram& d, const std::string& rule, const PairPosition& pos) {
  Layered l = Layered::from_term(d);
  if (!pos.region.is_body && pos.region.scalar_index >= l.scalars.size()) return std::nullopt;
  Sliced& region = region_of(l, pos.region);
  // Only the listed candidates are redexes.
  const auto cands = candidates(rule, region);
  if (std::find(cands.begin(), cands.end(), std::make_pair(pos.first, pos.second)) == cands.end())
    return std::nullopt;
  if (!pair_rewrite_for(rule)(region.slices, pos.first, pos.second)) return std::nullopt;
  left_normalize(region.slices);
  try {
    return rebuild(l);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

std::optional<Step> find_pair_rule(const Diagram& d, const std::string& rule) {
  const Layered l = Layered::from_term(d);
  for (const Region& r : regions_of(l)) {
    const Sliced& region = r.is_body ? l.body : l.scalars[r.scalar_index];
    for (const auto& [i, j] : candidates(rule, region)) {
      PairPosition pos{r, i, j};
      if (auto out = try_pair_rule(d, rule, pos)) {
        return Step{*out, TraceEntry{rule, pair_position_string(pos), d.size(), out->size()}};
      }
    }
  }
  return std::nullopt;
}

bool floatable_region(const Layered& l, const Region& r, std::size_t component_count) {
  if (r.is_body) return floatable(l.body, component_count);
  return component_count >= 2;
}

std::optional<Diagram> float_at(const Diagram& d, const Region& r, std::size_t first_slice) {
  Layered l = Layered::from_term(d);
  if (!r.is_body && r.scalar_index >= l.scalars.size()) return std::nullopt;
  const Sliced& region = r.is_body ? l.body : l.scalars[r.scalar_index];
  const auto comps = closed_components(region);
  if (!floatable_region(l, r, comps.size())) return std::nullopt;
  for (const auto& comp : comps) {
    if (comp.front() != first_slice) continue;
    Sliced scalar = restrict_to(region, comp, WireType::unit());
    Sliced rest = restrict_to(region, complement_of(region.slices.size(), comp), region.dom);
    left_normalize(scalar.slices);
    left_normalize(rest.slices);
    if (r.is_body) {
      l.scalars.push_back(std::move(scalar));
      l.body = std::move(rest);
    } else {
      const auto at = l.scalars.begin() + static_cast<std::ptrdiff_t>(r.scalar_index);
      *at = std::move(scalar);
      l.scalars.insert(at + 1, std::move(rest));
    }
    return rebuild(l);
  }
  return std::nullopt;
}

std::optional<Step> find_float(const Diagram& d) {
  const Layered l = Layered::from_term(d);
  for (const Region& r : regions_of(l)) {
    const Sliced& region = r.is_body ? l.body : l.scalars[r.scalar_index];
    const auto comps = closed_components(region);
    if (!floatable_region(l, r, comps.size())) continue;
    const std::size_t first = comps.front().front();
    if (auto out = float_at(d, r, first)) {
      const std::string pos = region_prefix(r) + " slice " + std::to_string(first);
      return Step{*out, TraceEntry{"float-scalar", pos, d.size(), out->size()}};
    }
  }
  return std::nullopt;
}

std::optional<Diagram> interchange(const Diagram& d) {
  Diagram out = layered_normal(Layered::from_term(d)).to_term();
  if (out == d) return std::nullopt;
  return out;
}

}  // namespace

std::string format_trace(const RewriteTrace& trace) {
  std::ostringstream out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& e = trace[i];
    out << "step " << (i + 1) << ": " << e.rule << " at " << e.position << " (size " << e.before_size << "→"
        << e.after_size << ")\n";
  }
  return out.str();
}

Measure measure(const Diagram& d) {
  const Layered l = Layered::from_term(d);
  std::size_t slide = SlidePotential(l.body).total();
  std::size_t unfloated = unfloated_components(l.body);
  for (const auto& s : l.scalars) {
    slide += SlidePotential(s).total();
    const std::size_t n = closed_components(s).size();
    unfloated += n == 0 ? 0 : n - 1;
  }
  return Measure{cap_cup_count(d), variant_weight(d), is_layered(d) ? 0U : 1U, unfloated, slide,
                 d.size()};
}

std::optional<Diagram> apply_rule(const Diagram& d, const std::string& rule, const std::string& position) {
  if (rule == "dagger-distribute") {
    const auto path = path_from_string(position);
    if (!path) return std::nullopt;
    const Diagram* node = node_at(d, *path);
    if (!node || node->kind() != Kind::variant || node->body().is_leaf()) return std::nullopt;
    return replace_at(d, *path, distribute(*node));
  }
  if (rule == "interchange") {
    if (position != "root") return std::nullopt;
    return interchange(d);
  }
  if (rule == "float-scalar") {
    std::istringstream in(position);
    std::string word;
    Region r;
    if (!(in >> word)) return std::nullopt;
    if (word == "scalar") {
      r.is_body = false;
      if (!(in >> r.scalar_index)) return std::nullopt;
    } else if (word != "body") {
      return std::nullopt;
    }
    std::size_t index = 0;
    if (!(in >> word >> index) || word != "slice") return std::nullopt;
    return float_at(d, r, index);
  }
  if (rule == "yank" || rule == "slide-cap" || rule == "slide-cup") {
    const auto pos = parse_pair_position(position);
    if (!pos) return std::nullopt;
    return try_pair_rule(d, rule, *pos);
  }
  return std::nullopt;
}

std::optional<Step> rewrite_step(const Diagram& d) {
  if (auto path = innermost_variant(d)) {
    const Diagram* node = node_at(d, *path);
    Diagram out = replace_at(d, *path, distribute(*node));
    return Step{out, TraceEntry{"dagger-distribute", path_to_string(*path), d.size(), out.size()}};
  }
  if (auto out = interchange(d)) {
    return Step{*out, TraceEntry{"interchange", "root", d.size(), out->size()}};
  }
  if (auto step = find_float(d)) return step;
  for (const char* rule : {"yank", "slide-cap", "slide-cup"}) {
    if (auto step = find_pair_rule(d, rule)) return step;
  }
  return std::nullopt;
}

Normalized normalize(const Diagram& d) {
  Normalized out{d, {}};
  Measure current = measure(d);
  constexpr std::size_t kMaxSteps = 100000;
  while (auto step = rewrite_step(out.result)) {
    const Measure next = measure(step->result);
    if (!(next < current)) {
      throw std::logic_error("rewrite measure did not decrease at " + step->entry.rule + " " + step->entry.position);
    }
    if (step->result.dom() != d.dom() || step->result.cod() != d.cod()) {
      throw std::logic_error("rewrite changed the diagram type at " + step->entry.rule);
    }
    out.trace.push_back(step->entry);
    out.result = step->result;
    current = next;
    if (out.trace.size() > kMaxSteps) throw std::logic_error("normalize exceeded step limit");
  }
  return out;
}

Diagram replay(const Diagram& input, const RewriteTrace& trace) {
  Diagram d = input;
  for (const auto& e : trace) {
    auto next = apply_rule(d, e.rule, e.position);
    if (!next) throw std::invalid_argument("trace entry does not apply: " + e.rule + " at " + e.position);
    d = *next;
  }
  return d;
}

namespace {

Diagram canonical_variants(const Diagram& d) {
  switch (d.kind()) {
    case Kind::seq: return seq(canonical_variants(d.first()), canonical_variants(d.second()));
    case Kind::par: return par(canonical_variants(d.first()), canonical_variants(d.second()));
    case Kind::variant: return lazy_variant(d.variant(), canonical_form(d.body()));
    default: return d;
  }
}

void split_components(const Sliced& s, std::vector<Sliced>& out) {
  for (const auto& comp : closed_components(s)) {
    Sliced part = restrict_to(s, comp, WireType::unit());
    left_normalize(part.slices);
    out.push_back(std::move(part));
  }
}

}  // namespace

Diagram canonical_form(const Diagram& d) {
  const Diagram base = contains_variant(d) ? canonical_variants(d) : d;
  const Layered l = Layered::from_term(base);
  Layered out{{}, Sliced{l.body.dom, {}}};
  for (const auto& s : l.scalars) split_components(s, out.scalars);
  const bool scalar_body = l.body.dom.is_unit() && l.body.cod().is_unit();
  if (scalar_body) {
    split_components(l.body, out.scalars);
  } else {
    const auto comps = closed_components(l.body);
    std::vector<std::size_t> closed;
    for (const auto& comp : comps) {
      Sliced part = restrict_to(l.body, comp, WireType::unit());
      left_normalize(part.slices);
      out.scalars.push_back(std::move(part));
      closed.insert(closed.end(), comp.begin(), comp.end());
    }
    std::sort(closed.begin(), closed.end());
    out.body = restrict_to(l.body, complement_of(l.body.slices.size(), closed), l.body.dom);
    left_normalize(out.body.slices);
  }
  std::vector<std::pair<std::string, Sliced>> keyed;
  for (auto& s : out.scalars) keyed.emplace_back(debug_string(s.to_term()), std::move(s));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.scalars.clear();
  for (auto& [key, s] : keyed) out.scalars.push_back(std::move(s));
  return out.to_term();
}

bool structural_eq(const Diagram& a, const Diagram& b) {
  if (a.dom() != b.dom() || a.cod() != b.cod()) return false;
  return canonical_form(a) == canonical_form(b);
}

}  // namespace kqm
