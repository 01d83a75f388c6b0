#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace acc {

/// Dense 0-based identifier into one of the ACC tables. Ids are never reused
/// within a resolution trace.
template <class Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}

  constexpr std::size_t index() const { return value; }
  friend constexpr auto operator<=>(Id, Id) = default;
};

using ComponentId = Id<struct ComponentTag>;
using PointId = Id<struct PointTag>;
using BranchId = Id<struct BranchTag>;

template <class Tag>
std::string to_string(Id<Tag> id) {
  return std::to_string(id.value);
}

}  // namespace acc
