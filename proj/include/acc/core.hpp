#pragma once

// Abstract curve combinatorics: the (components, points, branches, attach,
// owner, mu) data model, its axioms, Bezout degrees and connectivity.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "acc/error.hpp"
#include "acc/ids.hpp"
#include "acc/rational.hpp"
#include "acc/union_find.hpp"

namespace acc {

struct RawBranch {
  std::size_t point = 0;
  std::size_t component = 0;
};

struct RawMu {
  std::size_t first = 0;
  std::size_t second = 0;
  std::int64_t value = 0;
};

/// Unvalidated ACC tables with dense ids; missing mu entries mean zero.
struct RawAcc {
  std::size_t components = 0;
  std::size_t points = 0;
  std::vector<RawBranch> branches;
  std::vector<RawMu> mu;
};

using BranchPair = std::pair<BranchId, BranchId>;

inline BranchPair ordered_pair(BranchId a, BranchId b) {
  return a < b ? BranchPair{a, b} : BranchPair{b, a};
}

/// Storage behind an Acc. Point ids may be sparse once points have been
/// replaced by sigma-processes, so liveness is tracked per id.
struct AccTables {
  std::size_t components = 0;
  std::vector<bool> live_points;
  std::vector<PointId> attach;
  std::vector<ComponentId> owner;
  std::map<BranchPair, std::int64_t> mu;  // positive entries only

  bool operator==(const AccTables&) const = default;
};

class Acc {
 public:
  /// Validates every ACC axiom; throws Error on the first breach.
  static Acc from_tables(AccTables tables) { return Acc(std::move(tables)); }

  std::size_t component_count() const { return t_.components; }
  std::size_t branch_count() const { return t_.attach.size(); }
  std::size_t point_capacity() const { return t_.live_points.size(); }

  const std::vector<PointId>& points() const { return points_; }
  bool is_live(PointId p) const {
    return p.index() < t_.live_points.size() && t_.live_points[p.index()];
  }

  PointId attach(BranchId b) const { return t_.attach.at(b.index()); }
  ComponentId owner(BranchId b) const { return t_.owner.at(b.index()); }

  const std::vector<BranchId>& branches_at(PointId p) const { return at_point_.at(p.index()); }
  const std::vector<BranchId>& branches_of(ComponentId c) const {
    return of_component_.at(c.index());
  }

  std::int64_t mu(BranchId a, BranchId b) const {
    auto it = t_.mu.find(ordered_pair(a, b));
    return it == t_.mu.end() ? 0 : it->second;
  }

  const std::map<BranchPair, std::int64_t>& mu_table() const { return t_.mu; }
  const AccTables& tables() const { return t_; }

  bool operator==(const Acc& other) const { return t_ == other.t_; }

 private:
  explicit Acc(AccTables tables) : t_(std::move(tables)) {
    index();
    check_axioms();
  }

  void index() {
    const std::size_t nb = t_.attach.size();
    if (t_.owner.size() != nb)
      throw Error(ErrorCode::MalformedInput, "attach and owner tables differ in length");
    at_point_.assign(t_.live_points.size(), {});
    of_component_.assign(t_.components, {});
    for (std::size_t i = 0; i < nb; ++i) {
      BranchId b(i);
      PointId p = t_.attach[i];
      ComponentId c = t_.owner[i];
      if (!is_live(p))
        throw Error(ErrorCode::MalformedInput,
                    "branch " + to_string(b) + " attached to unknown point " + to_string(p));
      if (c.index() >= t_.components)
        throw Error(ErrorCode::MalformedInput,
                    "branch " + to_string(b) + " owned by unknown component " + to_string(c));
      at_point_[p.index()].push_back(b);
      of_component_[c.index()].push_back(b);
    }
    points_.clear();
    for (std::size_t p = 0; p < t_.live_points.size(); ++p)
      if (t_.live_points[p]) points_.emplace_back(p);
  }

  void check_axioms() const {
    for (PointId p : points_)
      if (at_point_[p.index()].empty())
        throw Error(ErrorCode::NonSurjectiveMap, "point " + to_string(p) + " has no branch");
    for (std::size_t c = 0; c < t_.components; ++c)
      if (of_component_[c].empty())
        throw Error(ErrorCode::NonSurjectiveMap, "component " + std::to_string(c) + " has no branch");

    auto pair_text = [](BranchPair bp) {
      return "(" + to_string(bp.first) + ", " + to_string(bp.second) + ")";
    };
    for (const auto& [bp, value] : t_.mu) {
      if (bp.first.index() >= branch_count() || bp.second.index() >= branch_count())
        throw Error(ErrorCode::MalformedInput, "mu entry references unknown branch");
      if (value <= 0)
        throw Error(ErrorCode::MalformedInput, "stored mu entries must be positive");
      if (bp.first == bp.second)
        throw Error(ErrorCode::PositivityViolation, "mu" + pair_text(bp) + " must be 0");
      if (attach(bp.first) != attach(bp.second))
        throw Error(ErrorCode::PositivityViolation,
                    "mu" + pair_text(bp) + " > 0 for branches at different points");
      if (owner(bp.first) == owner(bp.second))
        throw Error(ErrorCode::PositivityViolation,
                    "mu" + pair_text(bp) + " > 0 for branches of one component");
    }
    for (PointId p : points_) {
      const auto& here = at_point_[p.index()];
      for (std::size_t i = 0; i < here.size(); ++i)
        for (std::size_t j = i + 1; j < here.size(); ++j)
          if (owner(here[i]) != owner(here[j]) && !t_.mu.contains(ordered_pair(here[i], here[j])))
            throw Error(ErrorCode::PositivityViolation,
                        "mu" + pair_text(ordered_pair(here[i], here[j])) +
                            " = 0 for co-located branches of distinct components");
    }
  }

  AccTables t_;
  std::vector<PointId> points_;
  std::vector<std::vector<BranchId>> at_point_;
  std::vector<std::vector<BranchId>> of_component_;
};

inline Acc validate_acc(const RawAcc& raw) {
  AccTables t;
  t.components = raw.components;
  t.live_points.assign(raw.points, true);
  for (std::size_t i = 0; i < raw.branches.size(); ++i) {
    const auto& rb = raw.branches[i];
    if (rb.point >= raw.points || rb.component >= raw.components)
      throw Error(ErrorCode::MalformedInput, "branch " + std::to_string(i) + " index out of range");
    t.attach.emplace_back(rb.point);
    t.owner.emplace_back(rb.component);
  }
  for (const auto& m : raw.mu) {
    if (m.first >= raw.branches.size() || m.second >= raw.branches.size())
      throw Error(ErrorCode::MalformedInput, "mu entry references unknown branch");
    if (m.value < 0) throw Error(ErrorCode::MalformedInput, "mu entries must be non-negative");
    auto key = ordered_pair(BranchId(m.first), BranchId(m.second));
    if (t.mu.contains(key))
      throw Error(ErrorCode::MalformedInput, "mu entry for pair (" + std::to_string(m.first) +
                                                 ", " + std::to_string(m.second) + ") listed twice");
    if (m.value > 0) t.mu.emplace(key, m.value);
  }
  return Acc::from_tables(std::move(t));
}

/// d_{i,j}: total intersection of two distinct components.
inline std::int64_t pairwise_intersection(const Acc& acc, ComponentId i, ComponentId j) {
  if (i == j)
    throw Error(ErrorCode::SameComponent, "component " + to_string(i) + " paired with itself");
  std::int64_t total = 0;
  for (const auto& [bp, value] : acc.mu_table()) {
    ComponentId a = acc.owner(bp.first), b = acc.owner(bp.second);
    if ((a == i && b == j) || (a == j && b == i)) total += value;
  }
  return total;
}

/// Full symmetric table of pairwise intersections (zero diagonal).
inline std::vector<std::vector<std::int64_t>> pairwise_table(const Acc& acc) {
  const std::size_t n = acc.component_count();
  std::vector<std::vector<std::int64_t>> d(n, std::vector<std::int64_t>(n, 0));
  for (const auto& [bp, value] : acc.mu_table()) {
    auto a = acc.owner(bp.first).index(), b = acc.owner(bp.second).index();
    d[a][b] += value;
    d[b][a] += value;
  }
  return d;
}

/// mu(delta, j): intersection of one branch with a whole component.
inline std::int64_t branch_component_multiplicity(const Acc& acc, BranchId delta, ComponentId j) {
  std::int64_t total = 0;
  for (BranchId other : acc.branches_at(acc.attach(delta)))
    if (acc.owner(other) == j) total += acc.mu(delta, other);
  return total;
}

struct DegreeData {
  std::vector<std::vector<std::int64_t>> pairwise;
  std::vector<Rational> degree_sq;
  std::vector<Rational> degree;
};

inline DegreeData compute_degrees(const Acc& acc) {
  const std::size_t n = acc.component_count();
  if (n < 3)
    throw Error(ErrorCode::TooFewComponents,
                "Bezout degrees need at least 3 components, got " + std::to_string(n));
  DegreeData out;
  out.pairwise = pairwise_table(acc);
  const auto& d = out.pairwise;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      if (d[j][k] == 0)
        throw Error(ErrorCode::ZeroPairwiseIntersection,
                    "d(" + std::to_string(j) + ", " + std::to_string(k) + ") = 0");

  for (std::size_t i = 0; i < n; ++i) {
    std::optional<Rational> common;
    std::size_t cj = 0, ck = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (k == i) continue;
        Rational q(Integer(d[i][j]) * d[i][k], Integer(d[j][k]));
        if (!common) {
          common = q;
          cj = j;
          ck = k;
        } else if (q != *common) {
          throw Error(ErrorCode::BezoutViolation,
                      "component " + std::to_string(i) + ": quotient via (" + std::to_string(cj) +
                          ", " + std::to_string(ck) + ") is " + to_string(*common) + " but via (" +
                          std::to_string(j) + ", " + std::to_string(k) + ") is " + to_string(q));
        }
      }
    }
    out.degree_sq.push_back(*common);
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto root = exact_sqrt(out.degree_sq[i]);
    if (!root)
      throw Error(ErrorCode::IrrationalDegree, "component " + std::to_string(i) + " has d^2 = " +
                                                   to_string(out.degree_sq[i]));
    out.degree.push_back(*root);
  }
  return out;
}

using ComponentPartition = std::vector<std::vector<ComponentId>>;

/// Parts of `keep` linked by chains of intersecting components inside `keep`.
/// Parts are sorted and ordered by their smallest member.
inline ComponentPartition connected_components(const Acc& acc, std::span<const ComponentId> keep) {
  std::vector<ComponentId> members(keep.begin(), keep.end());
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<std::size_t> slot(acc.component_count(), members.size());
  for (std::size_t i = 0; i < members.size(); ++i) slot.at(members[i].index()) = i;

  detail::DisjointSets sets(members.size());
  for (const auto& [bp, value] : acc.mu_table()) {
    std::size_t a = slot[acc.owner(bp.first).index()], b = slot[acc.owner(bp.second).index()];
    if (a < members.size() && b < members.size()) sets.unite(a, b);
  }
  ComponentPartition out;
  for (const auto& part : sets.parts()) {
    auto& dst = out.emplace_back();
    for (std::size_t i : part) dst.push_back(members[i]);
  }
  return out;
}

inline std::vector<ComponentId> all_components(const Acc& acc) {
  std::vector<ComponentId> out;
  for (std::size_t c = 0; c < acc.component_count(); ++c) out.emplace_back(c);
  return out;
}

}  // namespace acc
