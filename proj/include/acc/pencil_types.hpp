#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "acc/core.hpp"

namespace acc {

/// Fibers (sorted, ordered by smallest member) with positive integer
/// multiplicities per component and the common weighted fiber degree.
struct CombinatorialPencil {
  ComponentPartition fibers;
  std::vector<std::int64_t> multiplicity;
  Rational fiber_degree;

  std::int64_t multiplicity_gcd() const {
    std::int64_t g = 0;
    for (auto m : multiplicity) g = std::gcd(g, m);
    return g;
  }
  bool normalized() const { return multiplicity_gcd() == 1; }

  /// Index of the fiber holding `c`.
  std::size_t fiber_of(ComponentId c) const {
    for (std::size_t f = 0; f < fibers.size(); ++f)
      for (ComponentId x : fibers[f])
        if (x == c) return f;
    return fibers.size();
  }

  bool operator==(const CombinatorialPencil&) const = default;
};

}  // namespace acc
