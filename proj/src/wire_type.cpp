#include "kqm/wire_type.hpp"

#include <algorithm>
#include <stdexcept>

namespace kqm {

WireType WireType::dual() const {
  std::vector<Wire> out;
  out.reserve(wires_.size());
  for (auto it = wires_.rbegin(); it != wires_.rend(); ++it) out.push_back(it->dualized());
  return WireType{std::move(out)};
}

WireType WireType::tensor(const WireType& rhs) const {
  std::vector<Wire> out = wires_;
  out.insert(out.end(), rhs.wires_.begin(), rhs.wires_.end());
  return WireType{std::move(out)};
}

WireType WireType::slice(std::size_t offset, std::size_t count) const {
  if (offset + count > wires_.size()) throw std::out_of_range("WireType::slice out of range");
  return WireType{std::vector<Wire>(wires_.begin() + static_cast<std::ptrdiff_t>(offset),
                                    wires_.begin() + static_cast<std::ptrdiff_t>(offset + count))};
}

std::string WireType::str() const {
  if (wires_.empty()) return "I";
  std::string out;
  for (std::size_t i = 0; i < wires_.size(); ++i) {
    if (i) out += " & ";
    out += wires_[i].str();
  }
  return out;
}

}  // namespace kqm
