#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kqm/diagram.hpp"

namespace kqm {

/// Rule names, in the priority order rewrite_step tries them.
inline constexpr std::array<const char*, 6> kRuleNames = {
    "dagger-distribute",  // unpushed variant over a composite
    "interchange",        // re-layer into left-normal sliced form
    "float-scalar",       // move a closed component to the leftmost Par slot
    "yank",               // zig-zag of a cap and a cup
    "slide-cap",          // box on a cap's left leg moves to its right leg
    "slide-cup",          // box on a cup's left leg moves to its right leg
};

struct TraceEntry {
  std::string rule;
  /// Tree path ("root", "0.1") for dagger-distribute, slice indices of the
  /// body for the sliced rules.
  std::string position;
  std::size_t before_size = 0;
  std::size_t after_size = 0;
};

using RewriteTrace = std::vector<TraceEntry>;

/// `step N: <rule> at <path> (size S→S')`, one line per entry, N from 1.
std::string format_trace(const RewriteTrace& trace);

/// Lexicographic termination measure: cap/cup count, size under unpushed
/// variants, non-layered flag, unfloated closed components, remaining slide
/// moves, term size.
using Measure = std::array<std::size_t, 6>;
Measure measure(const Diagram& d);

struct Step {
  Diagram result;
  TraceEntry entry;
};

/// One rewrite at the leftmost-innermost redex of the highest-priority rule
/// that applies, or nullopt at a normal form.
std::optional<Step> rewrite_step(const Diagram& d);

/// Applies `rule` at `position`; nullopt if that redex is not present.
std::optional<Diagram> apply_rule(const Diagram& d, const std::string& rule, const std::string& position);

struct Normalized {
  Diagram result;
  RewriteTrace trace;
};

/// Rewrites to a fixpoint. Throws std::logic_error if the measure ever fails
/// to decrease.
Normalized normalize(const Diagram& d);

/// Re-applies every trace entry starting from `input`.
Diagram replay(const Diagram& input, const RewriteTrace& trace);

/// Equality modulo Seq/Par associativity, unit laws, the interchange law
/// and the placement of scalar components.
bool structural_eq(const Diagram& a, const Diagram& b);

/// The canonical form structural_eq compares.
Diagram canonical_form(const Diagram& d);

}  // namespace kqm
