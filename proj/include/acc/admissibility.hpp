#pragma once

// Admissible vector families: branch vectors, the parallelism conditions,
// the family induced by a pencil, transport through sigma-processes and the
// trivial/dicritical classification of exceptional divisors.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "acc/blowup.hpp"
#include "acc/linalg.hpp"
#include "acc/pencil_types.hpp"

namespace acc {

struct VectorFamily {
  std::size_t dim = 0;
  std::vector<RationalVector> vectors;  // indexed by ComponentId

  const RationalVector& operator[](ComponentId c) const { return vectors.at(c.index()); }
  bool operator==(const VectorFamily&) const = default;
};

inline void check_covers(const Acc& acc, const VectorFamily& fam) {
  if (fam.vectors.size() != acc.component_count())
    throw Error(ErrorCode::FamilyMismatch, "family has " + std::to_string(fam.vectors.size()) +
                                               " vectors for " +
                                               std::to_string(acc.component_count()) +
                                               " components");
  for (std::size_t c = 0; c < fam.vectors.size(); ++c)
    if (fam.vectors[c].size() != fam.dim)
      throw Error(ErrorCode::FamilyMismatch,
                  "vector of component " + std::to_string(c) + " has the wrong dimension");
}

inline bool is_parallel(const RationalVector& u, const RationalVector& w) {
  if (u.size() != w.size())
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(u.size()) + " vs " + std::to_string(w.size()));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * w[j] != u[j] * w[i]) return false;
  return true;
}

/// v_delta: mu-weighted sum of the vectors of the other components at the
/// branch's point.
inline RationalVector branch_vector(const Acc& acc, const VectorFamily& fam, BranchId delta) {
  RationalVector v(fam.dim, Rational(0));
  for (BranchId other : acc.branches_at(acc.attach(delta))) {
    std::int64_t m = acc.mu(delta, other);
    if (m == 0) continue;
    const auto& w = fam[acc.owner(other)];
    for (std::size_t k = 0; k < fam.dim; ++k) v[k] += m * w[k];
  }
  return v;
}

inline bool branch_condition_holds(const Acc& acc, const VectorFamily& fam, BranchId delta) {
  return is_parallel(fam[acc.owner(delta)], branch_vector(acc, fam, delta));
}

inline bool is_spanning(const VectorFamily& fam) {
  RationalMatrix m(fam.vectors.size(), fam.dim);
  for (std::size_t r = 0; r < fam.vectors.size(); ++r)
    for (std::size_t c = 0; c < fam.dim; ++c) m(r, c) = fam.vectors[r][c];
  return rank(m) == fam.dim;
}

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<BranchId> witness;  // first branch whose condition fails
  bool spanning = false;
};

inline AdmissibilityReport is_admissible_family(const Acc& acc, const VectorFamily& fam) {
  check_covers(acc, fam);
  AdmissibilityReport r;
  r.spanning = is_spanning(fam);
  for (std::size_t b = 0; b < acc.branch_count(); ++b)
    if (!branch_condition_holds(acc, fam, BranchId(b))) {
      r.admissible = false;
      r.witness = BranchId(b);
      break;
    }
  return r;
}

/// The family of a pencil with k+1 fibers in k-space: the first fiber maps
/// to -m_i (e_1 + ... + e_k), fiber j >= 1 to m_i e_j.
inline VectorFamily family_from_pencil(const Acc& acc, const CombinatorialPencil& pencil) {
  const std::size_t n = acc.component_count();
  if (pencil.fibers.size() < 3 || pencil.multiplicity.size() != n)
    throw Error(ErrorCode::UnverifiedPencil, "pencil does not match this ACC");
  std::vector<bool> seen(n, false);
  for (const auto& fiber : pencil.fibers)
    for (ComponentId c : fiber) {
      if (c.index() >= n || seen[c.index()])
        throw Error(ErrorCode::UnverifiedPencil, "fibers do not partition the components");
      seen[c.index()] = true;
    }
  for (std::size_t c = 0; c < n; ++c)
    if (!seen[c] || pencil.multiplicity[c] < 1)
      throw Error(ErrorCode::UnverifiedPencil, "component " + std::to_string(c) +
                                                   " is uncovered or has non-positive multiplicity");

  VectorFamily fam;
  fam.dim = pencil.fibers.size() - 1;
  fam.vectors.assign(n, RationalVector(fam.dim, Rational(0)));
  for (std::size_t f = 0; f < pencil.fibers.size(); ++f)
    for (ComponentId c : pencil.fibers[f]) {
      const Rational m = pencil.multiplicity[c.index()];
      auto& v = fam.vectors[c.index()];
      if (f == 0)
        for (auto& x : v) x = -m;
      else
        v[f - 1] = m;
    }
  return fam;
}

/// Extends a family on W to the sigma-process at spec.point: the new
/// exceptional vector is the nu-weighted sum of the vectors at the point.
inline VectorFamily transport_family(const Acc& before, const SigmaProcessSpec& spec,
                                     const VectorFamily& fam) {
  check_covers(before, fam);
  VectorFamily out = fam;
  RationalVector ve(fam.dim, Rational(0));
  for (BranchId b : before.branches_at(spec.point)) {
    const auto& v = fam[before.owner(b)];
    const std::int64_t nu = spec.nu.at(b);
    for (std::size_t k = 0; k < fam.dim; ++k) ve[k] += nu * v[k];
  }
  out.vectors.push_back(std::move(ve));
  return out;
}

/// Family on every stage of the trace, starting with `fam` on W0.
inline std::vector<VectorFamily> transport_along(const ResolutionTrace& trace,
                                                 const VectorFamily& fam) {
  std::vector<VectorFamily> out{fam};
  for (std::size_t s = 0; s < trace.steps().size(); ++s)
    out.push_back(transport_family(trace.stages()[s], trace.steps()[s].spec, out.back()));
  return out;
}

inline VectorFamily transport_to_final(const ResolutionTrace& trace, const VectorFamily& fam) {
  return transport_along(trace, fam).back();
}

enum class DivisorKind { Original, Plain, Trivial, Dicritical };

constexpr const char* divisor_kind_name(DivisorKind k) {
  switch (k) {
    case DivisorKind::Original: return "original";
    case DivisorKind::Plain: return "exceptional";
    case DivisorKind::Trivial: return "trivial";
    case DivisorKind::Dicritical: return "dicritical";
  }
  return "";
}

struct DivisorClass {
  std::vector<DivisorKind> kind;  // indexed by ComponentId of the final stage

  bool is_trivial(ComponentId c) const {
    auto k = kind.at(c.index());
    return k == DivisorKind::Trivial || k == DivisorKind::Dicritical;
  }
};

/// Components of the last stage meeting `e` through a branch with mu = 1.
inline std::vector<ComponentId> transversal_neighbors(const Acc& acc, ComponentId e) {
  std::vector<ComponentId> out;
  for (BranchId eb : acc.branches_of(e))
    for (BranchId other : acc.branches_at(acc.attach(eb))) {
      ComponentId d = acc.owner(other);
      if (d == e || branch_component_multiplicity(acc, other, e) != 1) continue;
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
  std::sort(out.begin(), out.end());
  return out;
}

inline DivisorClass classify_divisors(const ResolutionTrace& trace, const VectorFamily& fam) {
  const Acc& last = trace.final_stage();
  if (!check_normal_crossing(last).normal_crossing)
    throw Error(ErrorCode::NotResolved, "final stage is not normal crossing");
  check_covers(last, fam);
  DivisorClass out;
  for (std::size_t c = 0; c < last.component_count(); ++c) {
    ComponentId e(c);
    if (trace.is_original(e)) {
      out.kind.push_back(DivisorKind::Original);
      continue;
    }
    bool trivial = is_zero(fam[e]);
    bool dicritical = false;
    auto nb = transversal_neighbors(last, e);
    for (std::size_t i = 0; i < nb.size() && !dicritical; ++i)
      for (std::size_t j = i + 1; j < nb.size() && !dicritical; ++j)
        dicritical = !is_parallel(fam[nb[i]], fam[nb[j]]);
    if (dicritical && !trivial)
      throw Error(ErrorCode::ClassificationInconsistency,
                  "dicritical divisor " + std::to_string(c) + " has a non-zero vector");
    out.kind.push_back(dicritical ? DivisorKind::Dicritical
                                  : (trivial ? DivisorKind::Trivial : DivisorKind::Plain));
  }
  return out;
}

}  // namespace acc
