#pragma once

// In-memory versions of the shipped fixtures, built directly from tables.

#include <vector>

#include "acc/acc.hpp"

namespace acc::testing {

// Conic, two tangent lines and the chord through the tangency points.
// Components: 0 conic, 1 tangent at PL, 2 tangent at PR, 3 chord.
// Points: 0 PL, 1 PR, 2 apex of the tangents.
inline RawAcc conic_raw() {
  RawAcc r;
  r.components = 4;
  r.points = 3;
  r.branches = {{0, 0}, {0, 1}, {0, 3}, {1, 0}, {1, 2}, {1, 3}, {2, 1}, {2, 2}};
  r.mu = {{0, 1, 2}, {0, 2, 1}, {1, 2, 1}, {3, 4, 2}, {3, 5, 1}, {4, 5, 1}, {6, 7, 1}};
  return r;
}

inline Acc conic() { return validate_acc(conic_raw()); }

inline SigmaProcessSpec singleton_spec(const Acc& w, PointId p) {
  SigmaProcessSpec s;
  s.point = p;
  for (BranchId b : w.branches_at(p)) {
    s.clusters.push_back({b});
    s.nu[b] = 1;
  }
  return s;
}

// Two tangency blow-ups followed by one blow-up of each leftover contact point.
inline std::vector<SigmaProcessSpec> conic_script() {
  auto bid = [](std::size_t i) { return BranchId(i); };
  auto one = [](std::initializer_list<std::size_t> ids) {
    std::map<BranchId, std::int64_t> nu;
    for (auto i : ids) nu[BranchId(i)] = 1;
    return nu;
  };
  return {
      {PointId(0), {{bid(0), bid(1)}, {bid(2)}}, one({0, 1, 2})},
      {PointId(1), {{bid(3), bid(4)}, {bid(5)}}, one({3, 4, 5})},
      {PointId(3), {{bid(0)}, {bid(1)}, {bid(8)}}, one({0, 1, 8})},
      {PointId(5), {{bid(3)}, {bid(4)}, {bid(10)}}, one({3, 4, 10})},
  };
}

inline ComponentPartition partition(std::initializer_list<std::initializer_list<std::size_t>> parts) {
  ComponentPartition out;
  for (const auto& p : parts) {
    auto& f = out.emplace_back();
    for (auto c : p) f.emplace_back(c);
  }
  return out;
}

// Six concurrent lines X, Y, X-Y, X+Y, X-2Y, X+2Y.
inline Acc sixlines() {
  RawAcc r;
  r.components = 6;
  r.points = 1;
  for (std::size_t c = 0; c < 6; ++c) r.branches.push_back({0, c});
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) r.mu.push_back({i, j, 1});
  return validate_acc(r);
}

inline std::vector<SigmaProcessSpec> sixlines_script() {
  return {singleton_spec(sixlines(), PointId(0))};
}

// Three conics pairwise bitangent at P and R.
inline Acc bitangent_triple() {
  RawAcc r;
  r.components = 3;
  r.points = 2;
  r.branches = {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}};
  r.mu = {{0, 1, 2}, {0, 2, 2}, {1, 2, 2}, {3, 4, 2}, {3, 5, 2}, {4, 5, 2}};
  return validate_acc(r);
}

inline CombinatorialPencil pencil_of(const Acc& acc, ComponentPartition fibers,
                                     std::vector<std::int64_t> mult) {
  return verify_pencil(acc, compute_degrees(acc), std::move(fibers), mult).pencil;
}

inline CombinatorialPencil conic_pencil() {
  return pencil_of(conic(), partition({{0}, {1, 2}, {3}}), {1, 1, 1, 2});
}

inline CombinatorialPencil sixlines_pencil() {
  return pencil_of(sixlines(), partition({{0, 1}, {2, 3}, {4, 5}}), std::vector<std::int64_t>(6, 1));
}

inline RationalVector rv(std::initializer_list<long> xs) {
  RationalVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RationalMatrix rm(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace acc::testing
