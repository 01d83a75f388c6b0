#pragma once

// Incidence matrix J, degree matrix D and Q = D - J J^t of a resolution,
// the decomposition of Q into irreducible boxes and their Vinberg types.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "acc/admissibility.hpp"
#include "acc/linalg.hpp"

namespace acc {

struct SpectralData {
  std::vector<ComponentId> kept;     // originals by id, then exceptionals by creation
  std::vector<PointId> blown_points; // column order of J
  Matrix<std::int64_t> J;
  RationalVector dbar;
  RationalMatrix D;
  RationalMatrix Q;
};

/// nu_i at a step: total nu of the component's branches at the blown-up point.
inline std::int64_t component_nu(const Acc& before, const SigmaProcessSpec& spec, ComponentId c) {
  std::int64_t total = 0;
  for (BranchId b : before.branches_at(spec.point))
    if (before.owner(b) == c) total += spec.nu.at(b);
  return total;
}

inline SpectralData build_spectral_data(const ResolutionTrace& trace, const DegreeData& degrees,
                                        std::vector<ComponentId> kept) {
  if (kept.empty()) throw Error(ErrorCode::EmptyKeptSet, "no component with a non-zero vector");
  if (degrees.degree.size() != trace.original_component_count())
    throw Error(ErrorCode::MalformedInput, "degree data does not match the original components");
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

  SpectralData sd;
  sd.kept = kept;
  const auto& steps = trace.steps();
  const std::size_t rows = kept.size(), cols = steps.size();
  sd.J = Matrix<std::int64_t>(rows, cols);
  for (std::size_t l = 0; l < cols; ++l) {
    const Acc& before = trace.stages()[l];
    sd.blown_points.push_back(steps[l].spec.point);
    for (std::size_t r = 0; r < rows; ++r) {
      ComponentId c = kept[r];
      if (c == steps[l].created.exceptional)
        sd.J(r, l) = -1;
      else if (c.index() < before.component_count())
        sd.J(r, l) = component_nu(before, steps[l].spec, c);
    }
  }

  sd.dbar.assign(rows, Rational(0));
  for (std::size_t r = 0; r < rows; ++r)
    if (trace.is_original(kept[r])) sd.dbar[r] = degrees.degree[kept[r].index()];

  sd.D = RationalMatrix(rows, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) sd.D(i, j) = sd.dbar[i] * sd.dbar[j];

  RationalMatrix jq(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t l = 0; l < cols; ++l) jq(i, l) = sd.J(i, l);
  sd.Q = sd.D - jq * transpose(jq);
  return sd;
}

/// Kept set = components of the last stage whose vector is non-zero.
inline SpectralData build_spectral_data(const ResolutionTrace& trace, const DegreeData& degrees,
                                        const VectorFamily& final_family) {
  check_covers(trace.final_stage(), final_family);
  std::vector<ComponentId> kept;
  for (std::size_t c = 0; c < final_family.vectors.size(); ++c)
    if (!is_zero(final_family.vectors[c])) kept.emplace_back(c);
  return build_spectral_data(trace, degrees, std::move(kept));
}

enum class VinbergType { Fin, Aff, Ind };

constexpr const char* vinberg_name(VinbergType t) {
  switch (t) {
    case VinbergType::Fin: return "Fin";
    case VinbergType::Aff: return "Aff";
    case VinbergType::Ind: return "Ind";
  }
  return "";
}

struct Box {
  std::vector<std::size_t> members;  // row indices into SpectralData::kept
  RationalMatrix block;
  std::optional<VinbergType> type;
  RationalVector kernel;  // primitive positive generator, Aff boxes only
};

struct BoxDecomposition {
  std::vector<Box> boxes;
};

/// Irreducible boxes: connected components of the graph with edges q_ij > 0.
inline BoxDecomposition decompose_boxes(const RationalMatrix& q) {
  detail::DisjointSets sets(q.rows());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = i + 1; j < q.cols(); ++j)
      if (q(i, j) > 0) sets.unite(i, j);
  BoxDecomposition out;
  for (auto& part : sets.parts()) {
    Box b;
    b.block = principal_submatrix(q, part);
    b.members = std::move(part);
    out.boxes.push_back(std::move(b));
  }
  return out;
}

inline BoxDecomposition decompose_boxes(const SpectralData& sd) { return decompose_boxes(sd.Q); }

struct VinbergResult {
  VinbergType type;
  Inertia inertia;        // of -Q
  RationalVector kernel;  // Aff only
};

/// Fin iff -Q is positive definite, Aff iff -Q is positive semidefinite of
/// corank 1, Ind otherwise. The Aff kernel generator must be strictly
/// positive after sign normalization.
inline VinbergResult vinberg_classify(const RationalMatrix& q) {
  if (!is_symmetric(q)) throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
  const std::size_t n = q.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && q(i, j) < 0)
        throw Error(ErrorCode::NegativeOffDiagonal,
                    "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is negative");
  if (n == 0 || decompose_boxes(q).boxes.size() != 1)
    throw Error(ErrorCode::Reducible, "matrix is not irreducible");

  VinbergResult out;
  out.inertia = inertia(negate(q));
  if (out.inertia.positive == n) {
    out.type = VinbergType::Fin;
  } else if (out.inertia.negative == 0 && out.inertia.zero == 1) {
    out.type = VinbergType::Aff;
    auto basis = kernel_basis(q);
    if (basis.size() != 1)
      throw Error(ErrorCode::ClassificationInconsistency, "corank 1 but kernel dimension " +
                                                              std::to_string(basis.size()));
    out.kernel = basis.front();
    for (const auto& x : out.kernel)
      if (x <= 0)
        throw Error(ErrorCode::ClassificationInconsistency,
                    "affine kernel " + to_string(out.kernel) + " is not strictly positive");
  } else {
    out.type = VinbergType::Ind;
  }
  return out;
}

inline void classify_boxes(BoxDecomposition& bd) {
  for (auto& box : bd.boxes) {
    auto r = vinberg_classify(box.block);
    box.type = r.type;
    box.kernel = std::move(r.kernel);
  }
}

}  // namespace acc
