#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kqm {

/// One oriented wire of a named base type. `dual` marks the reversed
/// orientation A*.
struct Wire {
  std::string base;
  bool dual = false;

  Wire dualized() const { return Wire{base, !dual}; }
  std::string str() const { return dual ? base + "*" : base; }

  friend auto operator<=>(const Wire&, const Wire&) = default;
  friend bool operator==(const Wire&, const Wire&) = default;
};

/// An ordered list of oriented wires. The empty list is the monoidal unit I.
///
/// Dualizing reverses the order and flips every orientation, so
/// (A & B)* = B* & A* and dual() is an involution.
class WireType {
 public:
  WireType() = default;
  explicit WireType(std::vector<Wire> wires) : wires_(std::move(wires)) {}
  WireType(std::initializer_list<Wire> wires) : wires_(wires) {}

  static WireType unit() { return {}; }
  static WireType base(const std::string& name, bool dual = false) {
    return WireType{Wire{name, dual}};
  }

  const std::vector<Wire>& wires() const { return wires_; }
  const Wire& operator[](std::size_t i) const { return wires_[i]; }
  std::size_t size() const { return wires_.size(); }
  bool is_unit() const { return wires_.empty(); }

  WireType dual() const;
  WireType tensor(const WireType& rhs) const;
  /// Sub-list of `count` wires starting at `offset`.
  WireType slice(std::size_t offset, std::size_t count) const;

  /// Text form used by the DSL: `I`, `Q`, `Q* & R`.
  std::string str() const;

  friend auto operator<=>(const WireType&, const WireType&) = default;
  friend bool operator==(const WireType&, const WireType&) = default;

 private:
  std::vector<Wire> wires_;
};

inline WireType operator&(const WireType& a, const WireType& b) { return a.tensor(b); }

}  // namespace kqm
