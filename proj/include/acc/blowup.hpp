#pragma once

// Combinatorial blow-up (sigma-process), normal-crossing test, resolution
// scripts and a bounded search for resolutions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "acc/core.hpp"

namespace acc {

struct SigmaProcessSpec {
  PointId point;
  std::vector<std::vector<BranchId>> clusters;
  std::map<BranchId, std::int64_t> nu;

  bool operator==(const SigmaProcessSpec&) const = default;
};

struct CreatedIds {
  ComponentId exceptional;
  std::vector<PointId> points;      // one per cluster, same order
  std::vector<BranchId> branches;   // exceptional branch at each new point

  bool operator==(const CreatedIds&) const = default;
};

struct SigmaResult {
  Acc acc;
  CreatedIds created;
};

namespace detail {

inline std::string pair_text(BranchId a, BranchId b) {
  return "(" + to_string(a) + ", " + to_string(b) + ")";
}

}  // namespace detail

/// Throws unless `spec` is a valid sigma-process at its point: clusters
/// partition the branches there, every nu is positive, separated pairs of
/// distinct components have mu = nu*nu', co-clustered ones mu > nu*nu'.
inline void check_sigma_spec(const Acc& acc, const SigmaProcessSpec& spec) {
  if (!acc.is_live(spec.point))
    throw Error(ErrorCode::InvalidPoint, "point " + to_string(spec.point) + " is not a live point");
  const auto& here = acc.branches_at(spec.point);
  std::set<BranchId> expected(here.begin(), here.end()), seen;
  std::map<BranchId, std::size_t> cluster_of;
  for (std::size_t c = 0; c < spec.clusters.size(); ++c) {
    if (spec.clusters[c].empty())
      throw Error(ErrorCode::InvalidPartition, "cluster " + std::to_string(c) + " is empty");
    for (BranchId b : spec.clusters[c]) {
      if (!expected.contains(b))
        throw Error(ErrorCode::InvalidPartition,
                    "branch " + to_string(b) + " is not at point " + to_string(spec.point));
      if (!seen.insert(b).second)
        throw Error(ErrorCode::InvalidPartition, "branch " + to_string(b) + " listed twice");
      cluster_of[b] = c;
    }
  }
  if (seen != expected)
    throw Error(ErrorCode::InvalidPartition,
                "clusters do not cover every branch at point " + to_string(spec.point));
  for (BranchId b : here) {
    auto it = spec.nu.find(b);
    if (it == spec.nu.end())
      throw Error(ErrorCode::InvalidPartition, "missing nu for branch " + to_string(b));
    if (it->second < 1)
      throw Error(ErrorCode::InvalidPartition, "nu for branch " + to_string(b) + " must be >= 1");
  }
  if (spec.nu.size() != here.size())
    throw Error(ErrorCode::InvalidPartition, "nu given for branches outside the point");

  for (std::size_t i = 0; i < here.size(); ++i)
    for (std::size_t j = i + 1; j < here.size(); ++j) {
      BranchId a = here[i], b = here[j];
      if (acc.owner(a) == acc.owner(b)) continue;
      std::int64_t m = acc.mu(a, b), prod = spec.nu.at(a) * spec.nu.at(b);
      if (cluster_of[a] != cluster_of[b] && m != prod)
        throw Error(ErrorCode::SeparationViolation,
                    "separated pair " + detail::pair_text(a, b) + " has mu " + std::to_string(m) +
                        " != nu product " + std::to_string(prod));
      if (cluster_of[a] == cluster_of[b] && m <= prod)
        throw Error(ErrorCode::CohabitationViolation,
                    "co-clustered pair " + detail::pair_text(a, b) + " has mu " +
                        std::to_string(m) + " <= nu product " + std::to_string(prod));
    }
}

inline SigmaResult apply_sigma_process(const Acc& acc, const SigmaProcessSpec& spec) {
  check_sigma_spec(acc, spec);
  AccTables t = acc.tables();
  CreatedIds created;
  created.exceptional = ComponentId(t.components++);
  t.live_points[spec.point.index()] = false;

  const auto& here = acc.branches_at(spec.point);
  for (std::size_t i = 0; i < here.size(); ++i)
    for (std::size_t j = i + 1; j < here.size(); ++j) {
      BranchId a = here[i], b = here[j];
      if (acc.owner(a) == acc.owner(b)) continue;
      auto key = ordered_pair(a, b);
      std::int64_t reduced = t.mu.at(key) - spec.nu.at(a) * spec.nu.at(b);
      if (reduced == 0)
        t.mu.erase(key);
      else
        t.mu[key] = reduced;
    }

  for (const auto& cluster : spec.clusters) {
    PointId fresh(t.live_points.size());
    t.live_points.push_back(true);
    BranchId eb(t.attach.size());
    t.attach.push_back(fresh);
    t.owner.push_back(created.exceptional);
    for (BranchId b : cluster) {
      t.attach[b.index()] = fresh;
      t.mu[ordered_pair(b, eb)] = spec.nu.at(b);
    }
    created.points.push_back(fresh);
    created.branches.push_back(eb);
  }
  return {Acc::from_tables(std::move(t)), std::move(created)};
}

struct NormalCrossingReport {
  bool normal_crossing = true;
  std::optional<PointId> point;       // first offending point
  std::optional<BranchPair> pair;     // set when the breach is a mu > 1
  std::size_t branch_count = 0;       // branches at the offending point
};

inline bool is_resolved_point(const Acc& acc, PointId p) {
  const auto& here = acc.branches_at(p);
  return here.size() == 2 && acc.mu(here[0], here[1]) <= 1;
}

inline NormalCrossingReport check_normal_crossing(const Acc& acc) {
  NormalCrossingReport r;
  for (PointId p : acc.points()) {
    const auto& here = acc.branches_at(p);
    if (here.size() != 2) {
      r.normal_crossing = false;
      r.point = p;
      r.branch_count = here.size();
      return r;
    }
    if (acc.mu(here[0], here[1]) > 1) {
      r.normal_crossing = false;
      r.point = p;
      r.pair = ordered_pair(here[0], here[1]);
      r.branch_count = 2;
      return r;
    }
  }
  return r;
}

struct TraceStep {
  SigmaProcessSpec spec;
  CreatedIds created;
};

class ResolutionTrace;
ResolutionTrace validate_resolution_script(const Acc& acc,
                                           const std::vector<SigmaProcessSpec>& script);

/// A replayed, validated resolution W0 <- W1 <- ... <- Wn ending in normal
/// crossing. Only obtainable through validate_resolution_script.
class ResolutionTrace {
 public:
  const std::vector<Acc>& stages() const { return stages_; }
  const Acc& initial() const { return stages_.front(); }
  const Acc& final_stage() const { return stages_.back(); }
  const std::vector<TraceStep>& steps() const { return steps_; }

  std::size_t original_component_count() const { return initial().component_count(); }
  bool is_original(ComponentId c) const { return c.index() < original_component_count(); }
  bool is_original(BranchId b) const { return b.index() < initial().branch_count(); }

  /// Step index that created an exceptional component; nullopt for originals.
  std::optional<std::size_t> creation_step(ComponentId c) const {
    if (is_original(c)) return std::nullopt;
    return c.index() - original_component_count();
  }

  std::vector<SigmaProcessSpec> script() const {
    std::vector<SigmaProcessSpec> out;
    for (const auto& s : steps_) out.push_back(s.spec);
    return out;
  }

 private:
  friend ResolutionTrace validate_resolution_script(const Acc&,
                                                    const std::vector<SigmaProcessSpec>&);
  explicit ResolutionTrace(const Acc& initial) : stages_{initial} {}

  std::vector<Acc> stages_;
  std::vector<TraceStep> steps_;
};

/// One script step with the checks of validate_resolution_script: the spec
/// must be valid and branches with ids at or above `first_exceptional_branch`
/// must have nu = 1. Errors carry a "step N: " prefix (1-based).
inline SigmaResult apply_script_step(const Acc& current, const SigmaProcessSpec& spec,
                                     std::size_t step, std::size_t first_exceptional_branch) {
  try {
    // before the generic check, which would report nu > 1 as a separation breach
    for (const auto& [b, nu] : spec.nu)
      if (b.index() >= first_exceptional_branch && nu != 1)
        throw Error(ErrorCode::ExceptionalMultiplicityViolation,
                    "branch " + to_string(b) + " is not original and has nu " + std::to_string(nu));
    check_sigma_spec(current, spec);
    return apply_sigma_process(current, spec);
  } catch (const Error& e) {
    throw Error(e.code(), "step " + std::to_string(step + 1) + ": " + e.detail());
  }
}

inline ResolutionTrace validate_resolution_script(const Acc& acc,
                                                  const std::vector<SigmaProcessSpec>& script) {
  ResolutionTrace trace(acc);
  for (std::size_t s = 0; s < script.size(); ++s) {
    auto result = apply_script_step(trace.stages_.back(), script[s], s, acc.branch_count());
    trace.stages_.push_back(std::move(result.acc));
    trace.steps_.push_back({script[s], std::move(result.created)});
  }
  auto nc = check_normal_crossing(trace.final_stage());
  if (!nc.normal_crossing)
    throw Error(ErrorCode::NotNormalCrossingAtEnd,
                "point " + to_string(*nc.point) + " of the last stage is not a normal crossing");
  return trace;
}

namespace detail {

// Set partitions of {0..n-1} as restricted growth strings, fewest blocks first,
// lexicographic within one block count.
inline std::vector<std::vector<std::size_t>> partitions_coarsest_first(std::size_t n) {
  std::vector<std::vector<std::size_t>> all;
  std::vector<std::size_t> rgs(n, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t blocks) -> void {
    if (i == n) {
      all.push_back(rgs);
      return;
    }
    for (std::size_t b = 0; b <= blocks && b < n; ++b) {
      rgs[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (n == 0) return {{}};
  rgs[0] = 0;
  rec(rec, 1, 1);
  auto blocks = [](const std::vector<std::size_t>& r) {
    return r.empty() ? 0 : *std::max_element(r.begin(), r.end()) + 1;
  };
  std::stable_sort(all.begin(), all.end(),
                   [&](const auto& a, const auto& b) { return blocks(a) < blocks(b); });
  return all;
}

}  // namespace detail

/// Every valid sigma-process at `p`, coarsest partitions first and nu
/// assignments in lexicographic order. Branches with ids at or above
/// `first_exceptional_branch` get nu = 1. An original branch's nu is bounded
/// by its smallest mu with a co-located branch of another component (1 when
/// it has none).
inline std::vector<SigmaProcessSpec> enumerate_sigma_specs(const Acc& acc, PointId p,
                                                           std::size_t first_exceptional_branch) {
  const auto& here = acc.branches_at(p);
  const std::size_t n = here.size();
  std::vector<std::int64_t> bound(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (here[i].index() >= first_exceptional_branch) continue;
    std::optional<std::int64_t> lo;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && acc.owner(here[i]) != acc.owner(here[j])) {
        std::int64_t m = acc.mu(here[i], here[j]);
        lo = lo ? std::min(*lo, m) : m;
      }
    bound[i] = lo.value_or(1);
  }

  std::vector<SigmaProcessSpec> out;
  for (const auto& rgs : detail::partitions_coarsest_first(n)) {
    std::vector<std::int64_t> nu(n, 0);
    auto ok_with_prefix = [&](std::size_t k) {
      for (std::size_t j = 0; j < k; ++j) {
        if (acc.owner(here[j]) == acc.owner(here[k])) continue;
        std::int64_t m = acc.mu(here[j], here[k]), prod = nu[j] * nu[k];
        if (rgs[j] == rgs[k] ? m <= prod : m != prod) return false;
      }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t k) -> void {
      if (k == n) {
        SigmaProcessSpec spec;
        spec.point = p;
        std::size_t blocks = *std::max_element(rgs.begin(), rgs.end()) + 1;
        spec.clusters.assign(blocks, {});
        for (std::size_t i = 0; i < n; ++i) {
          spec.clusters[rgs[i]].push_back(here[i]);
          spec.nu[here[i]] = nu[i];
        }
        out.push_back(std::move(spec));
        return;
      }
      for (std::int64_t v = 1; v <= bound[k]; ++v) {
        nu[k] = v;
        if (ok_with_prefix(k)) self(self, k + 1);
      }
    };
    rec(rec, 0);
  }
  return out;
}

/// Depth-first search for a resolution with at most `budget` steps. The first
/// unresolved point (ascending id) is always the one blown up next.
inline ResolutionTrace auto_resolve(const Acc& acc, std::size_t budget) {
  if (budget < 1) throw Error(ErrorCode::BudgetExhausted, "budget must be at least 1");
  const std::size_t first_exceptional = acc.branch_count();
  std::vector<SigmaProcessSpec> script;
  bool hit_limit = false;

  auto search = [&](auto&& self, const Acc& w) -> bool {
    std::optional<PointId> target;
    for (PointId p : w.points())
      if (!is_resolved_point(w, p)) {
        target = p;
        break;
      }
    if (!target) return true;
    if (script.size() == budget) {
      hit_limit = true;
      return false;
    }
    for (auto& spec : enumerate_sigma_specs(w, *target, first_exceptional)) {
      auto next = apply_sigma_process(w, spec);
      script.push_back(std::move(spec));
      if (self(self, next.acc)) return true;
      script.pop_back();
    }
    return false;
  };

  if (!search(search, acc)) {
    if (hit_limit)
      throw Error(ErrorCode::BudgetExhausted,
                  "no resolution within " + std::to_string(budget) + " steps");
    throw Error(ErrorCode::Unsolvable, "no resolution found");
  }
  return validate_resolution_script(acc, script);
}

}  // namespace acc
