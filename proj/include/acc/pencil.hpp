#pragma once

// Combinatorial pencils: axiom check with base-point report, refinement
// order, primitivity relative to a resolution, and primitive refinement
// through the affine boxes of Q.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acc/admissibility.hpp"
#include "acc/spectra.hpp"

namespace acc {

struct PointBalance {
  PointId point;
  bool base_point = false;
  std::vector<std::pair<BranchId, std::int64_t>> k;  // k_delta per branch, base points only
};

struct BasePointReport {
  std::vector<PointBalance> points;

  std::size_t base_point_count() const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [](const auto& p) { return p.base_point; }));
  }
};

struct PencilVerification {
  CombinatorialPencil pencil;
  BasePointReport report;
};

inline ComponentPartition canonical_partition(ComponentPartition parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::sort(parts.begin(), parts.end());
  return parts;
}

inline PencilVerification verify_pencil(const Acc& acc, const DegreeData& degrees,
                                        ComponentPartition fibers,
                                        const std::vector<std::int64_t>& mult) {
  const std::size_t n = acc.component_count();
  fibers = canonical_partition(std::move(fibers));
  std::vector<std::size_t> fiber_of(n, fibers.size());
  for (std::size_t f = 0; f < fibers.size(); ++f) {
    if (fibers[f].empty()) throw Error(ErrorCode::InvalidFiberPartition, "empty fiber");
    for (ComponentId c : fibers[f]) {
      if (c.index() >= n || fiber_of[c.index()] != fibers.size())
        throw Error(ErrorCode::InvalidFiberPartition,
                    "component " + to_string(c) + " is unknown or in two fibers");
      fiber_of[c.index()] = f;
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (fiber_of[c] == fibers.size())
      throw Error(ErrorCode::InvalidFiberPartition,
                  "component " + std::to_string(c) + " is in no fiber");
  if (fibers.size() < 3)
    throw Error(ErrorCode::TooFewFibers, std::to_string(fibers.size()) + " fibers, need 3");
  if (mult.size() != n)
    throw Error(ErrorCode::NonPositiveMultiplicity, "one multiplicity per component expected");
  for (std::size_t c = 0; c < n; ++c)
    if (mult[c] < 1)
      throw Error(ErrorCode::NonPositiveMultiplicity,
                  "component " + std::to_string(c) + " has multiplicity " + std::to_string(mult[c]));
  if (degrees.degree.size() != n)
    throw Error(ErrorCode::MalformedInput, "degree data does not match the ACC");

  std::vector<Rational> fiber_degree(fibers.size(), Rational(0));
  for (std::size_t f = 0; f < fibers.size(); ++f)
    for (ComponentId c : fibers[f]) fiber_degree[f] += mult[c.index()] * degrees.degree[c.index()];
  for (std::size_t f = 1; f < fibers.size(); ++f)
    if (fiber_degree[f] != fiber_degree[0])
      throw Error(ErrorCode::FiberDegreeMismatch,
                  "fiber 0 has degree " + to_string(fiber_degree[0]) + " but fiber " +
                      std::to_string(f) + " has " + to_string(fiber_degree[f]));

  BasePointReport report;
  for (PointId p : acc.points()) {
    PointBalance pb;
    pb.point = p;
    const auto& here = acc.branches_at(p);
    for (BranchId b : here)
      if (fiber_of[acc.owner(b).index()] != fiber_of[acc.owner(here.front()).index()])
        pb.base_point = true;
    if (pb.base_point) {
      for (BranchId b : here) {
        std::vector<std::int64_t> sums(fibers.size(), 0);
        for (BranchId other : here)
          sums[fiber_of[acc.owner(other).index()]] +=
              mult[acc.owner(other).index()] * acc.mu(b, other);
        const std::size_t own = fiber_of[acc.owner(b).index()];
        std::optional<std::int64_t> k;
        for (std::size_t f = 0; f < fibers.size(); ++f) {
          if (f == own) continue;
          if (!k) {
            k = sums[f];
          } else if (sums[f] != *k) {
            throw Error(ErrorCode::BasePointImbalance,
                        "point " + to_string(p) + ", branch " + to_string(b) + ": fiber sums " +
                            std::to_string(*k) + " and " + std::to_string(sums[f]));
          }
        }
        pb.k.emplace_back(b, *k);
      }
    }
    report.points.push_back(std::move(pb));
  }

  PencilVerification out;
  out.pencil.fibers = std::move(fibers);
  out.pencil.multiplicity = mult;
  out.pencil.fiber_degree = fiber_degree[0];
  out.report = std::move(report);
  return out;
}

inline bool is_refinement(const CombinatorialPencil& fine, const CombinatorialPencil& coarse) {
  auto members = [](const CombinatorialPencil& p) {
    std::vector<ComponentId> all;
    for (const auto& f : p.fibers) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end());
    return all;
  };
  if (members(fine) != members(coarse))
    throw Error(ErrorCode::ComponentSetMismatch, "pencils cover different components");
  for (const auto& f : fine.fibers) {
    std::size_t target = coarse.fiber_of(f.front());
    for (ComponentId c : f)
      if (coarse.fiber_of(c) != target) return false;
  }
  return true;
}

struct PrimitivityReport {
  bool primitive = true;
  std::optional<std::vector<ComponentId>> split_fiber;  // first fiber not connected
  std::int64_t gcd = 1;
};

/// Each fiber must lie in one connected component of the last stage once
/// zero-vector components are removed, and gcd(m) must be 1.
inline PrimitivityReport is_primitive(const CombinatorialPencil& pencil,
                                      const ResolutionTrace& trace,
                                      const VectorFamily& final_family) {
  const Acc& last = trace.final_stage();
  if (!check_normal_crossing(last).normal_crossing)
    throw Error(ErrorCode::NotResolved, "final stage is not normal crossing");
  check_covers(last, final_family);
  std::vector<ComponentId> keep;
  for (std::size_t c = 0; c < last.component_count(); ++c)
    if (!is_zero(final_family.vectors[c])) keep.emplace_back(c);
  auto parts = connected_components(last, keep);
  auto part_of = [&](ComponentId c) -> std::size_t {
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (std::binary_search(parts[i].begin(), parts[i].end(), c)) return i;
    return parts.size();
  };

  PrimitivityReport r;
  r.gcd = pencil.multiplicity_gcd();
  for (const auto& fiber : pencil.fibers) {
    std::size_t first = part_of(fiber.front());
    bool connected = first != parts.size();
    for (ComponentId c : fiber) connected = connected && part_of(c) == first;
    if (!connected) {
      r.primitive = false;
      r.split_fiber = fiber;
      break;
    }
  }
  if (r.gcd != 1) r.primitive = false;
  return r;
}

inline PrimitivityReport is_primitive(const CombinatorialPencil& pencil,
                                      const ResolutionTrace& trace) {
  auto fam = transport_to_final(trace, family_from_pencil(trace.initial(), pencil));
  return is_primitive(pencil, trace, fam);
}

struct Refinement {
  CombinatorialPencil pencil;
  BasePointReport report;
  VectorFamily final_family;  // input pencil's family on the last stage
  SpectralData spectral;
  BoxDecomposition boxes;
};

/// Refines a pencil along the affine boxes of Q: each box meets the original
/// components in one new fiber and its kernel gives the multiplicities. Box
/// kernels are rescaled to a common d-bar value before clearing denominators
/// and dividing by the overall gcd.
inline Refinement primitive_refinement(const Acc& acc, const DegreeData& degrees,
                                       const CombinatorialPencil& pencil,
                                       const ResolutionTrace& trace) {
  if (!(acc == trace.initial()))
    throw Error(ErrorCode::ComponentSetMismatch, "trace does not start at this ACC");
  Refinement out;
  out.final_family = transport_to_final(trace, family_from_pencil(acc, pencil));
  out.spectral = build_spectral_data(trace, degrees, out.final_family);
  out.boxes = decompose_boxes(out.spectral);

  const auto& sd = out.spectral;
  ComponentPartition fibers;
  std::vector<Rational> weight(acc.component_count(), Rational(0));
  for (std::size_t l = 0; l < out.boxes.boxes.size(); ++l) {
    auto& box = out.boxes.boxes[l];
    auto r = vinberg_classify(box.block);
    box.type = r.type;
    if (r.type != VinbergType::Aff)
      throw Error(ErrorCode::NonAffineBox,
                  "box " + std::to_string(l) + " has type " + vinberg_name(r.type));
    box.kernel = r.kernel;
    Rational dval = 0;
    auto& fiber = fibers.emplace_back();
    for (std::size_t i = 0; i < box.members.size(); ++i) {
      ComponentId c = sd.kept[box.members[i]];
      dval += sd.dbar[box.members[i]] * box.kernel[i];
      if (trace.is_original(c)) fiber.push_back(c);
    }
    if (fiber.empty())
      throw Error(ErrorCode::EmptyFiber, "box " + std::to_string(l) + " has no original component");
    for (std::size_t i = 0; i < box.members.size(); ++i) {
      ComponentId c = sd.kept[box.members[i]];
      if (trace.is_original(c)) weight[c.index()] = box.kernel[i] / dval;
    }
  }

  Integer scale = 1;
  for (const auto& w : weight) scale = lcm(scale, denominator(w));
  Integer g = 0;
  for (const auto& w : weight) g = gcd(g, numerator(w * scale));
  std::vector<std::int64_t> mult;
  for (const auto& w : weight) {
    auto m = to_int64(numerator(w * scale) / g);
    if (!m) throw Error(ErrorCode::MalformedInput, "refined multiplicity overflows 64 bits");
    mult.push_back(*m);
  }
  auto verified = verify_pencil(acc, degrees, std::move(fibers), mult);
  out.pencil = std::move(verified.pencil);
  out.report = std::move(verified.report);
  return out;
}

}  // namespace acc
